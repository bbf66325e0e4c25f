//! Maximum 2-matchings and their decomposition into paths and cycles.
//!
//! A 2-matching is a set of host edges in which every vertex has degree at
//! most 2, so its components are simple paths (a lone vertex is a path of
//! length 0) and simple cycles of length at least 3.
//!
//! A maximum 2-matching is computed by reduction to maximum matching. Every
//! vertex `v` gets two copies `v'`, `v''`; every host edge `(u, v)` becomes a
//! pair of fresh vertices `e_u`, `e_v` joined by an edge, with `e_u` adjacent
//! to both copies of `u` and `e_v` to both copies of `v`. A gadget contributes
//! two matched edges exactly when the host edge is used, one otherwise, so a
//! maximum matching of size `k'` projects to a maximum 2-matching of size
//! `k' - m`.

use std::fmt;

use thiserror::Error;

use crate::graph::Graph;
use crate::matching::maximum_matching_from;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwoMatchingError {
    #[error("({0}, {1}) is not an edge of the host graph")]
    NotHostEdge(usize, usize),
    #[error("edge ({0}, {1}) is already in the 2-matching")]
    AlreadyPresent(usize, usize),
    #[error("edge ({0}, {1}) is not in the 2-matching")]
    Missing(usize, usize),
    #[error("vertex {0} would exceed degree 2")]
    DegreeExceeded(usize),
}

/// A set of host edges with every vertex of degree at most 2.
#[derive(Clone, PartialEq, Eq)]
pub struct TwoMatching<'g> {
    host: &'g Graph,
    mates: Vec<[usize; 2]>,
    len: usize,
}

impl fmt::Debug for TwoMatching<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TwoMatching")
            .field("n", &self.host.n())
            .field("edges", &self.edges())
            .finish()
    }
}

impl<'g> TwoMatching<'g> {
    pub fn empty(host: &'g Graph) -> Self {
        TwoMatching {
            host,
            mates: vec![[NONE; 2]; host.n()],
            len: 0,
        }
    }

    pub fn from_edges<I>(host: &'g Graph, edges: I) -> Result<Self, TwoMatchingError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut m = TwoMatching::empty(host);
        for (u, v) in edges {
            m.insert(u, v)?;
        }
        Ok(m)
    }

    pub fn host(&self) -> &'g Graph {
        self.host
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.mates[v].iter().filter(|&&w| w != NONE).count()
    }

    /// Matching neighbors of `v`, in increasing order.
    pub fn mates(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let [a, b] = self.mates[v];
        let (a, b) = (a.min(b), a.max(b));
        [a, b].into_iter().filter(|&w| w != NONE)
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        u < self.mates.len() && self.mates[u].contains(&v)
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<_> = (0..self.mates.len())
            .flat_map(|u| self.mates(u).filter(move |&v| u < v).map(move |v| (u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn insert(&mut self, u: usize, v: usize) -> Result<(), TwoMatchingError> {
        if !self.host.has_edge(u, v) {
            return Err(TwoMatchingError::NotHostEdge(u, v));
        }
        if self.contains(u, v) {
            return Err(TwoMatchingError::AlreadyPresent(u.min(v), u.max(v)));
        }
        for w in [u, v] {
            if self.degree(w) == 2 {
                return Err(TwoMatchingError::DegreeExceeded(w));
            }
        }
        for (a, b) in [(u, v), (v, u)] {
            let slot = self.mates[a].iter_mut().find(|w| **w == NONE).expect("free slot");
            *slot = b;
        }
        self.len += 1;
        Ok(())
    }

    pub fn remove(&mut self, u: usize, v: usize) -> Result<(), TwoMatchingError> {
        if !self.contains(u, v) {
            return Err(TwoMatchingError::Missing(u.min(v), u.max(v)));
        }
        for (a, b) in [(u, v), (v, u)] {
            let slot = self.mates[a].iter_mut().find(|w| **w == b).expect("present");
            *slot = NONE;
        }
        self.len -= 1;
        Ok(())
    }

    /// Splits the 2-matching into its path and cycle components.
    pub fn decompose(&self) -> MatchingDecomposition {
        decompose(self)
    }
}

/// Grows paths greedily, each time stepping from the current end to the
/// smallest untouched neighbor, then adds any remaining edge whose ends both
/// have spare degree. Used to warm-start the exact computation; long paths
/// here tend to become long cycles in the maximum 2-matching.
fn greedy_two_matching(host: &Graph) -> TwoMatching<'_> {
    let mut m = TwoMatching::empty(host);
    for start in 0..host.n() {
        let mut cur = start;
        if m.degree(cur) > 0 {
            continue;
        }
        while let Some(&next) = host.neighbors(cur).iter().find(|&&w| w != start && m.degree(w) == 0) {
            m.insert(cur, next).expect("fresh vertex");
            cur = next;
        }
    }
    for &(u, v) in host.edges() {
        if m.degree(u) < 2 && m.degree(v) < 2 && !m.contains(u, v) {
            m.insert(u, v).expect("degree checked");
        }
    }
    m
}

/// Computes a maximum 2-matching of `g`.
pub fn maximum_two_matching(g: &Graph) -> TwoMatching<'_> {
    let n = g.n();
    let copy = |v: usize, k: usize| 2 * v + k;
    let side = |e: usize, k: usize| 2 * n + 2 * e + k;
    let total = 2 * n + 2 * g.m();

    let mut gadget_edges = Vec::with_capacity(5 * g.m());
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        gadget_edges.push((side(e, 0), side(e, 1)));
        for k in 0..2 {
            gadget_edges.push((copy(u, k), side(e, 0)));
            gadget_edges.push((copy(v, k), side(e, 1)));
        }
    }
    let gadget = Graph::from_edges(total, gadget_edges).expect("gadget graph is simple");

    // Start from the gadget image of a greedy 2-matching: used edges match
    // each side vertex to a free copy, unused edges match the two sides.
    let warm = greedy_two_matching(g);
    let mut mates = vec![None; total];
    let mut copies_used = vec![0usize; n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        if warm.contains(u, v) {
            for (w, k) in [(u, 0), (v, 1)] {
                let c = copy(w, copies_used[w]);
                copies_used[w] += 1;
                mates[c] = Some(side(e, k));
                mates[side(e, k)] = Some(c);
            }
        } else {
            mates[side(e, 0)] = Some(side(e, 1));
            mates[side(e, 1)] = Some(side(e, 0));
        }
    }
    let mates = maximum_matching_from(&gadget, mates);

    let is_copy_of = |x: Option<usize>, w: usize| matches!(x, Some(c) if c / 2 == w && c < 2 * n);
    let used = g.edges().iter().enumerate().filter_map(|(e, &(u, v))| {
        (is_copy_of(mates[side(e, 0)], u) && is_copy_of(mates[side(e, 1)], v)).then_some((u, v))
    });
    TwoMatching::from_edges(g, used).expect("projection of a gadget matching is a 2-matching")
}

/// Components of a 2-matching, bucketed by shape.
///
/// Paths are listed from their smaller endpoint. Cycles start at their
/// smallest vertex and continue toward the smaller of its two neighbors.
/// Every bucket is sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize)]
pub struct MatchingDecomposition {
    pub p0: Vec<usize>,
    pub p1: Vec<(usize, usize)>,
    pub p2: Vec<Vec<usize>>,
    pub p3: Vec<Vec<usize>>,
    pub p4: Vec<Vec<usize>>,
    pub p_ge5: Vec<Vec<usize>>,
    pub cycles: Vec<Vec<usize>>,
}

impl MatchingDecomposition {
    /// All paths as vertex sequences, shortest bucket first.
    pub fn paths(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        self.p0
            .iter()
            .map(|&v| vec![v])
            .chain(self.p1.iter().map(|&(u, v)| vec![u, v]))
            .chain(self.p2.iter().cloned())
            .chain(self.p3.iter().cloned())
            .chain(self.p4.iter().cloned())
            .chain(self.p_ge5.iter().cloned())
    }

    /// Number of vertices covered by all components.
    pub fn vertex_count(&self) -> usize {
        self.paths().map(|p| p.len()).sum::<usize>() + self.cycles.iter().map(Vec::len).sum::<usize>()
    }

    /// Bucket sizes `[p0, p1, p2, p3, p4, p_ge5, cycles]`.
    pub fn bucket_sizes(&self) -> [usize; 7] {
        [
            self.p0.len(),
            self.p1.len(),
            self.p2.len(),
            self.p3.len(),
            self.p4.len(),
            self.p_ge5.len(),
            self.cycles.len(),
        ]
    }

    /// Singletons plus endpoints of paths with at least one edge.
    pub fn ends(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.p0.clone();
        for p in self.paths().filter(|p| p.len() > 1) {
            out.push(p[0]);
            out.push(p[p.len() - 1]);
        }
        out.sort_unstable();
        out
    }
}

fn canonical_path(mut p: Vec<usize>) -> Vec<usize> {
    if p.len() > 1 && p[0] > p[p.len() - 1] {
        p.reverse();
    }
    p
}

fn canonical_cycle(mut c: Vec<usize>) -> Vec<usize> {
    let start = (0..c.len()).min_by_key(|&i| c[i]).expect("non-empty cycle");
    c.rotate_left(start);
    if c[c.len() - 1] < c[1] {
        c[1..].reverse();
    }
    c
}

/// Splits `m` into buckets of paths by length and cycles.
pub fn decompose(m: &TwoMatching<'_>) -> MatchingDecomposition {
    let n = m.host().n();
    let mut seen = vec![false; n];
    let mut dec = MatchingDecomposition::default();

    let walk = |start: usize, seen: &mut Vec<bool>| {
        let mut seq = vec![start];
        seen[start] = true;
        let mut prev = NONE;
        let mut cur = start;
        loop {
            let next = m.mates(cur).find(|&w| w != prev && !seen[w]);
            match next {
                Some(w) => {
                    seen[w] = true;
                    seq.push(w);
                    prev = cur;
                    cur = w;
                }
                None => return seq,
            }
        }
    };

    for v in 0..n {
        if !seen[v] && m.degree(v) < 2 {
            let p = canonical_path(walk(v, &mut seen));
            match p.len() - 1 {
                0 => dec.p0.push(p[0]),
                1 => dec.p1.push((p[0], p[1])),
                2 => dec.p2.push(p),
                3 => dec.p3.push(p),
                4 => dec.p4.push(p),
                _ => dec.p_ge5.push(p),
            }
        }
    }
    for v in 0..n {
        if !seen[v] {
            dec.cycles.push(canonical_cycle(walk(v, &mut seen)));
        }
    }
    dec.p0.sort_unstable();
    dec.p1.sort_unstable();
    for bucket in [
        &mut dec.p2,
        &mut dec.p3,
        &mut dec.p4,
        &mut dec.p_ge5,
        &mut dec.cycles,
    ] {
        bucket.sort_unstable();
    }
    dec
}

/// Looks for two singletons/endpoints of `dec` that are adjacent in `host`,
/// ignoring the edge of a 1-path itself. A maximum 2-matching has none.
pub fn adjacent_ends(host: &Graph, dec: &MatchingDecomposition) -> Option<(usize, usize)> {
    let ends = dec.ends();
    let mut is_end = vec![false; host.n()];
    for &v in &ends {
        is_end[v] = true;
    }
    let own: std::collections::HashSet<(usize, usize)> = dec.p1.iter().copied().collect();
    host.edges()
        .iter()
        .copied()
        .find(|&(u, v)| is_end[u] && is_end[v] && !own.contains(&(u, v)))
}
