//! Simple undirected graphs over the vertex set `0..n`.
//!
//! The same type holds a conflict graph and its complement, the agreement
//! graph. Graphs are immutable once built.

use std::collections::VecDeque;

use thiserror::Error;

/// Reasons a vertex/edge list does not describe a simple graph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
}

/// A simple undirected graph.
///
/// Edges are stored once as `(u, v)` with `u < v`, sorted; every vertex also
/// keeps a sorted neighbor list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// A graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// The complete graph on `n` vertices.
    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Graph::from_edges(n, edges).expect("complete graph is simple")
    }

    /// Builds a graph from an edge list. Edge orientation and order do not
    /// matter; self-loops, duplicates and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &list {
            adj[u].push(v);
            adj[v].push(u);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: list,
            adj,
        })
    }

    /// Builds the graph whose edges are the set bits of `mask`, indexed in the
    /// lexicographic order of pairs `(0,1), (0,2), ..., (n-2,n-1)`.
    ///
    /// Used to sweep every labeled graph on a few vertices.
    pub fn from_pair_mask(n: usize, mask: u64) -> Self {
        let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        let edges = pairs
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, e)| e);
        Graph::from_edges(n, edges).expect("pair mask yields a simple graph")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in increasing order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// The complement on the same vertex set: `(u, v)` is an edge of the
    /// result iff `u != v` and `(u, v)` is not an edge of `self`.
    pub fn complement(&self) -> Graph {
        let mut edges = Vec::with_capacity(self.n * self.n.saturating_sub(1) / 2 - self.m());
        for u in 0..self.n {
            let mut nbrs = self.adj[u].iter().copied().peekable();
            for v in u + 1..self.n {
                while nbrs.next_if(|&w| w < v).is_some() {}
                if nbrs.next_if_eq(&v).is_none() {
                    edges.push((u, v));
                }
            }
        }
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        Graph {
            n: self.n,
            edges,
            adj,
        }
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// A split of the vertex set into two sides that are each a clique of the
/// conflict graph with no conflict between them. `side_b` may be empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
pub struct CliquePartition {
    pub side_a: Vec<usize>,
    pub side_b: Vec<usize>,
}

impl CliquePartition {
    /// Checks that this partition certifies `conflicts` as the disjoint union
    /// of two cliques.
    pub fn certifies(&self, conflicts: &Graph) -> bool {
        let n = conflicts.n();
        let mut side = vec![None; n];
        for (label, part) in [(0u8, &self.side_a), (1u8, &self.side_b)] {
            for &v in part {
                if v >= n || side[v].is_some() {
                    return false;
                }
                side[v] = Some(label);
            }
        }
        if side.iter().any(Option::is_none) {
            return false;
        }
        if conflicts.edges().iter().any(|&(u, v)| side[u] != side[v]) {
            return false;
        }
        let pairs = |k: usize| k * k.saturating_sub(1) / 2;
        conflicts.m() == pairs(self.side_a.len()) + pairs(self.side_b.len())
    }
}

/// Recognizes a conflict graph that is the disjoint union of at most two
/// cliques, in `O(n + m)`.
///
/// With two components, `side_a` is the one containing vertex 0. With a single
/// component `side_b` is empty. Returns `None` for anything else.
pub fn recognize_two_cliques(g: &Graph) -> Option<CliquePartition> {
    let comps = g.components();
    if comps.len() > 2 {
        return None;
    }
    for comp in &comps {
        if comp.iter().any(|&v| g.degree(v) + 1 != comp.len()) {
            return None;
        }
    }
    let mut comps = comps.into_iter();
    Some(CliquePartition {
        side_a: comps.next().unwrap_or_default(),
        side_b: comps.next().unwrap_or_default(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn rejects_invalid_edges() {
        assert_eq!(
            Graph::from_edges(2, [(0, 0)]),
            Err(GraphError::SelfLoop(0))
        );
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::from_edges(2, [(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
    }

    #[test]
    fn edge_order_is_irrelevant() {
        let a = Graph::from_edges(4, [(2, 3), (1, 0), (3, 1)]).unwrap();
        let b = Graph::from_edges(4, [(0, 1), (1, 3), (2, 3)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.neighbors(1), &[0, 3]);
    }

    #[test]
    fn complement_examples() {
        assert_eq!(Graph::complete(3).complement(), Graph::empty(3));
        assert_eq!(Graph::empty(4).complement().m(), 6);
        assert_eq!(path3().complement().edges(), &[(0, 2)]);
        assert_eq!(Graph::empty(0).complement(), Graph::empty(0));
    }

    #[test]
    fn pair_mask_enumerates_pairs() {
        assert_eq!(Graph::from_pair_mask(3, 0b101).edges(), &[(0, 1), (1, 2)]);
        assert_eq!(Graph::from_pair_mask(4, 0b111111), Graph::complete(4));
    }

    #[test]
    fn two_clique_examples() {
        let k3_k2 = Graph::from_edges(5, [(0, 1), (0, 2), (1, 2), (3, 4)]).unwrap();
        let p = recognize_two_cliques(&k3_k2).unwrap();
        assert_eq!(p.side_a, vec![0, 1, 2]);
        assert_eq!(p.side_b, vec![3, 4]);
        assert!(p.certifies(&k3_k2));

        assert_eq!(recognize_two_cliques(&path3()), None);

        let p = recognize_two_cliques(&Graph::complete(4)).unwrap();
        assert_eq!(p.side_a, vec![0, 1, 2, 3]);
        assert!(p.side_b.is_empty());
    }

    #[test]
    fn two_clique_side_a_holds_vertex_zero() {
        let g = Graph::from_edges(4, [(1, 2), (1, 3), (2, 3)]).unwrap();
        let p = recognize_two_cliques(&g).unwrap();
        assert_eq!(p.side_a, vec![0]);
        assert_eq!(p.side_b, vec![1, 2, 3]);
    }

    #[test]
    fn three_components_are_rejected() {
        assert_eq!(recognize_two_cliques(&Graph::empty(3)), None);
    }

    #[test]
    fn certifies_rejects_bad_partitions() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let good = CliquePartition {
            side_a: vec![0, 1],
            side_b: vec![2, 3],
        };
        assert!(good.certifies(&g));
        let crossing = CliquePartition {
            side_a: vec![0, 2],
            side_b: vec![1, 3],
        };
        assert!(!crossing.certifies(&g));
        let missing = CliquePartition {
            side_a: vec![0, 1],
            side_b: vec![2],
        };
        assert!(!missing.certifies(&g));
    }
}
