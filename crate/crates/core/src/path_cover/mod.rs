//! Path covers with few short paths.
//!
//! Both algorithms start from a maximum 2-matching of the host graph,
//! repeatedly apply alternating-path swaps that save one deficient component
//! while keeping the matching maximum, and finally open every cycle.
//!
//! - [`algorithm_a`] minimizes the number of 0-paths (singletons).
//! - [`algorithm_b`] minimizes the number of 0-paths plus 1-paths.
//! - [`refine_to_min_singletons`] continues from the fixed point of B with
//!   singleton-saving swaps, which trade a singleton for at most one new
//!   1-path. It reaches the fewest singletons among covers with the fewest
//!   0- and 1-paths.
//!
//! ```
//! use fsc::graph::Graph;
//! use fsc::path_cover::{algorithm_a, algorithm_b};
//!
//! // Star with three leaves: one leaf is always left over.
//! let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
//! let cover = algorithm_a(&star);
//! assert_eq!(cover.num_0_paths(), 1);
//! assert_eq!(cover.num_paths(), 2);
//!
//! let edge = Graph::from_edges(2, [(0, 1)]).unwrap();
//! assert_eq!(algorithm_b(&edge).paths(), &[vec![0, 1]]);
//! ```

mod search;

use thiserror::Error;

pub use search::{
    apply_swap, find_saving_path, find_saving_path_a, find_saving_path_b, AlternatingPath, Rule,
    SaveObject, SwapError,
};

use crate::graph::Graph;
use crate::two_matching::{maximum_two_matching, MatchingDecomposition, TwoMatching};

/// Number of paths, 0-paths and 1-paths of a cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, serde::Serialize)]
pub struct CoverCounts {
    pub paths: usize,
    pub zero: usize,
    pub one: usize,
}

impl CoverCounts {
    /// 0-paths plus 1-paths.
    pub fn short(&self) -> usize {
        self.zero + self.one
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("vertex {0} is out of range")]
    OutOfRange(usize),
    #[error("vertex {0} is covered twice")]
    Repeated(usize),
    #[error("vertex {0} is not covered")]
    Uncovered(usize),
    #[error("consecutive vertices {0} and {1} are not adjacent in the host")]
    NotAnEdge(usize, usize),
    #[error("a path has no vertices")]
    EmptyPath,
}

/// Vertex-disjoint paths, given as vertex sequences.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
pub struct PathCover {
    paths: Vec<Vec<usize>>,
    counts: CoverCounts,
}

impl PathCover {
    /// Wraps a list of paths and counts them. Use [`PathCover::validate`] to
    /// check the paths against a host graph.
    pub fn new(paths: Vec<Vec<usize>>) -> Self {
        let counts = CoverCounts {
            paths: paths.len(),
            zero: paths.iter().filter(|p| p.len() == 1).count(),
            one: paths.iter().filter(|p| p.len() == 2).count(),
        };
        PathCover { paths, counts }
    }

    /// One singleton per vertex.
    pub fn singletons(n: usize) -> Self {
        PathCover::new((0..n).map(|v| vec![v]).collect())
    }

    pub fn paths(&self) -> &[Vec<usize>] {
        &self.paths
    }

    pub fn counts(&self) -> CoverCounts {
        self.counts
    }

    pub fn num_paths(&self) -> usize {
        self.counts.paths
    }

    pub fn num_0_paths(&self) -> usize {
        self.counts.zero
    }

    pub fn num_1_paths(&self) -> usize {
        self.counts.one
    }

    /// Number of covered vertices.
    pub fn num_vertices(&self) -> usize {
        self.paths.iter().map(Vec::len).sum()
    }

    /// Checks that the paths partition `0..host.n()` and use host edges only.
    pub fn validate(&self, host: &Graph) -> Result<(), CoverError> {
        let n = host.n();
        let mut seen = vec![false; n];
        for p in &self.paths {
            if p.is_empty() {
                return Err(CoverError::EmptyPath);
            }
            for &v in p {
                if v >= n {
                    return Err(CoverError::OutOfRange(v));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(CoverError::Repeated(v));
                }
            }
            if let Some(w) = p.windows(2).find(|w| !host.has_edge(w[0], w[1])) {
                return Err(CoverError::NotAnEdge(w[0], w[1]));
            }
        }
        match seen.iter().position(|&s| !s) {
            Some(v) => Err(CoverError::Uncovered(v)),
            None => Ok(()),
        }
    }
}

/// Opens every cycle of `m` by deleting the edge from its smallest vertex to
/// the smaller of that vertex's two cycle neighbors.
///
/// Paths are listed from their smaller endpoint, ordered by first vertex.
pub fn break_cycles(m: &TwoMatching<'_>) -> PathCover {
    cover_from(&m.decompose())
}

fn cover_from(dec: &MatchingDecomposition) -> PathCover {
    let mut paths: Vec<Vec<usize>> = dec.paths().collect();
    for c in &dec.cycles {
        // c = [s, t, ..., w] with t < w; dropping (s, t) leaves s, w, ..., t.
        let mut p = Vec::with_capacity(c.len());
        p.push(c[0]);
        p.extend(c[1..].iter().rev());
        paths.push(p);
    }
    paths.sort_unstable_by_key(|p| p[0]);
    PathCover::new(paths)
}

fn deficiency(dec: &MatchingDecomposition, rule: Rule) -> usize {
    match rule {
        Rule::Singletons => dec.p0.len(),
        Rule::ShortPaths => dec.p0.len() + dec.p1.len(),
    }
}

/// Applies saving swaps under `rule` until none exists.
///
/// Every swap keeps the size of the matching and lowers the deficiency
/// (singletons, or singletons plus 1-paths) by exactly one.
pub fn augment<'g>(mut m: TwoMatching<'g>, rule: Rule) -> TwoMatching<'g> {
    let host = m.host();
    let mut left = deficiency(&m.decompose(), rule);
    while left > 0 {
        let Some(ap) = find_saving_path(host, &m, rule) else {
            break;
        };
        let next = apply_swap(&m, &ap).expect("search yields a valid swap");
        let now = deficiency(&next.decompose(), rule);
        assert_eq!(now + 1, left, "swap {ap:?} must save exactly one object");
        assert_eq!(next.len(), m.len());
        m = next;
        left = now;
    }
    m
}

/// Path cover with the fewest 0-paths.
pub fn algorithm_a(host: &Graph) -> PathCover {
    break_cycles(&augment(maximum_two_matching(host), Rule::Singletons))
}

/// Path cover with the fewest 0-paths plus 1-paths.
pub fn algorithm_b(host: &Graph) -> PathCover {
    break_cycles(&augment(maximum_two_matching(host), Rule::ShortPaths))
}

/// The 2-matching Algorithm B reaches before opening cycles.
pub fn algorithm_b_matching(host: &Graph) -> TwoMatching<'_> {
    augment(maximum_two_matching(host), Rule::ShortPaths)
}

/// Continues from `m`, normally [`algorithm_b_matching`], with
/// singleton-saving swaps and opens the cycles.
///
/// Each swap removes one singleton and creates at most one 1-path, so the
/// number of 0- and 1-paths never grows.
pub fn refine_to_min_singletons(host: &Graph, m: TwoMatching<'_>) -> PathCover {
    debug_assert_eq!(host, m.host());
    break_cycles(&augment(m, Rule::Singletons))
}
