//! Maximum cardinality matching in general graphs.
//!
//! Edmonds' blossom contraction with a BFS augmenting-path search. Vertices
//! and neighbors are scanned in increasing index order, so the result is a
//! deterministic function of the input graph and the starting matching.

use std::collections::VecDeque;

use crate::graph::Graph;

const NONE: usize = usize::MAX;

/// Returns a maximum matching of `g` as edges `(u, v)` with `u < v`, sorted.
pub fn maximum_matching(g: &Graph) -> Vec<(usize, usize)> {
    let mates = maximum_matching_from(g, vec![None; g.n()]);
    mates
        .iter()
        .enumerate()
        .filter_map(|(u, &m)| m.filter(|&v| u < v).map(|v| (u, v)))
        .collect()
}

/// Grows the matching given by `mates` to a maximum one.
///
/// `mates[v]` is the partner of `v`, if any. The starting matching must be
/// consistent (`mates[mates[v]] == v`) and use only edges of `g`.
pub fn maximum_matching_from(g: &Graph, mates: Vec<Option<usize>>) -> Vec<Option<usize>> {
    assert_eq!(mates.len(), g.n(), "one mate slot per vertex");
    let mut engine = Blossom::new(g, mates);
    // A vertex with no augmenting path stays that way after later
    // augmentations, so a single pass over free vertices suffices.
    for root in 0..g.n() {
        if engine.mate[root] == NONE {
            if let Some(end) = engine.search(root) {
                engine.augment(end);
            }
        }
    }
    engine
        .mate
        .into_iter()
        .map(|m| (m != NONE).then_some(m))
        .collect()
}

struct Blossom<'g> {
    g: &'g Graph,
    mate: Vec<usize>,
    parent: Vec<usize>,
    base: Vec<usize>,
    in_tree: Vec<bool>,
    queue: VecDeque<usize>,
    // Scratch for lowest-common-ancestor and blossom marking.
    mark: Vec<bool>,
    in_blossom: Vec<bool>,
}

impl<'g> Blossom<'g> {
    fn new(g: &'g Graph, mates: Vec<Option<usize>>) -> Self {
        let n = g.n();
        let mate: Vec<usize> = mates.into_iter().map(|m| m.unwrap_or(NONE)).collect();
        for (v, &m) in mate.iter().enumerate() {
            if m != NONE {
                assert!(
                    mate[m] == v && g.has_edge(v, m),
                    "starting matching is inconsistent at vertex {v}"
                );
            }
        }
        Blossom {
            g,
            mate,
            parent: vec![NONE; n],
            base: (0..n).collect(),
            in_tree: vec![false; n],
            queue: VecDeque::new(),
            mark: vec![false; n],
            in_blossom: vec![false; n],
        }
    }

    fn lca(&mut self, mut a: usize, mut b: usize) -> usize {
        self.mark.iter_mut().for_each(|m| *m = false);
        loop {
            a = self.base[a];
            self.mark[a] = true;
            if self.mate[a] == NONE {
                break;
            }
            a = self.parent[self.mate[a]];
        }
        loop {
            b = self.base[b];
            if self.mark[b] {
                return b;
            }
            b = self.parent[self.mate[b]];
        }
    }

    fn mark_path(&mut self, mut v: usize, b: usize, mut child: usize) {
        while self.base[v] != b {
            self.in_blossom[self.base[v]] = true;
            self.in_blossom[self.base[self.mate[v]]] = true;
            self.parent[v] = child;
            child = self.mate[v];
            v = self.parent[self.mate[v]];
        }
    }

    /// BFS for an augmenting path from the free vertex `root`; returns the
    /// free vertex at its other end.
    fn search(&mut self, root: usize) -> Option<usize> {
        let n = self.g.n();
        self.in_tree.iter_mut().for_each(|x| *x = false);
        self.parent.iter_mut().for_each(|p| *p = NONE);
        for (i, b) in self.base.iter_mut().enumerate() {
            *b = i;
        }
        self.queue.clear();
        self.in_tree[root] = true;
        self.queue.push_back(root);

        while let Some(v) = self.queue.pop_front() {
            for &to in self.g.neighbors(v) {
                if self.base[v] == self.base[to] || self.mate[v] == to {
                    continue;
                }
                if to == root || (self.mate[to] != NONE && self.parent[self.mate[to]] != NONE) {
                    // Odd cycle: contract the blossom onto its base.
                    let cur = self.lca(v, to);
                    self.in_blossom.iter_mut().for_each(|x| *x = false);
                    self.mark_path(v, cur, to);
                    self.mark_path(to, cur, v);
                    for i in 0..n {
                        if self.in_blossom[self.base[i]] {
                            self.base[i] = cur;
                            if !self.in_tree[i] {
                                self.in_tree[i] = true;
                                self.queue.push_back(i);
                            }
                        }
                    }
                } else if self.parent[to] == NONE {
                    self.parent[to] = v;
                    if self.mate[to] == NONE {
                        return Some(to);
                    }
                    let next = self.mate[to];
                    self.in_tree[next] = true;
                    self.queue.push_back(next);
                }
            }
        }
        None
    }

    fn augment(&mut self, mut v: usize) {
        while v != NONE {
            let pv = self.parent[v];
            let ppv = self.mate[pv];
            self.mate[v] = pv;
            self.mate[pv] = v;
            v = ppv;
        }
    }
}
