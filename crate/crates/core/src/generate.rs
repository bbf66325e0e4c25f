//! Seeded instance families.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::format::{parse_instance, ParseError};
use crate::graph::Graph;
use crate::schedule::{Instance, Job};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("edge probability {0} is not in [0, 1]")]
    Probability(f64),
    #[error("{name} must be at least {min}, got {value}")]
    TooSmall {
        name: &'static str,
        value: u64,
        min: u64,
    },
    #[error("clique size {l} exceeds job count {n}")]
    CliqueTooLarge { l: usize, n: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

fn at_least(name: &'static str, value: u64, min: u64) -> Result<(), GenError> {
    if value < min {
        Err(GenError::TooSmall { name, value, min })
    } else {
        Ok(())
    }
}

/// The seeded generator used by every family.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each pair of `0..n` becomes an edge independently with probability `p`.
pub fn gnp_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::from_edges(n, edges).expect("pairs are distinct")
}

/// Unit jobs whose conflict graph is `G(n, p)`.
pub fn random_gnp(n: usize, p: f64, seed: u64) -> Result<Instance, GenError> {
    at_least("n", n as u64, 1)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(GenError::Probability(p));
    }
    Ok(Instance::unit(gnp_graph(n, p, &mut rng(seed))))
}

/// `k` triangles `{3i, 3i+1, 3i+2}` joined in a chain by the edges
/// `(3i+2, 3i+3)`. Every vertex has degree at most 3 and `0, 1, ..., 3k-1`
/// is a Hamiltonian path.
pub fn chained_triangle_graph(k: usize) -> Graph {
    let mut edges = Vec::with_capacity(4 * k);
    for i in 0..k {
        let b = 3 * i;
        edges.extend([(b, b + 1), (b + 1, b + 2), (b, b + 2)]);
        if i + 1 < k {
            edges.push((b + 2, b + 3));
        }
    }
    Graph::from_edges(3 * k, edges).expect("chain is simple")
}

/// Unit jobs whose agreement graph is [`chained_triangle_graph`].
pub fn chained_triangles(k: usize) -> Result<Instance, GenError> {
    at_least("k", k as u64, 1)?;
    Ok(Instance::unit(chained_triangle_graph(k).complement()))
}

/// Conflicts `K_l` on `0..l` and `K_{n-l}` on `l..n`, with each processing
/// time uniform in `1..=p_max`. With `p_max = 1` the jobs are unit jobs.
pub fn two_cliques(l: usize, n: usize, p_max: u64, seed: u64) -> Result<Instance, GenError> {
    at_least("n", n as u64, 1)?;
    at_least("p_max", p_max, 1)?;
    if l > n {
        return Err(GenError::CliqueTooLarge { l, n });
    }
    let mut rng = rng(seed);
    let jobs = (0..n)
        .map(|_| Job {
            p1: rng.gen_range(1..=p_max),
            p2: rng.gen_range(1..=p_max),
        })
        .collect();
    let clique = |lo: usize, hi: usize| (lo..hi).flat_map(move |u| (u + 1..hi).map(move |v| (u, v)));
    let conflicts = Graph::from_edges(n, clique(0, l).chain(clique(l, n))).expect("cliques are simple");
    Ok(Instance::new(jobs, conflicts).expect("one job per vertex"))
}

/// Unit jobs over the conflict graph of an instance file, ignoring any
/// processing times it lists.
pub fn unit_from_graph(text: &str) -> Result<Instance, GenError> {
    Ok(Instance::unit(parse_instance(text)?.conflicts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::recognize_two_cliques;

    #[test]
    fn chained_triangles_shape() {
        let g = chained_triangle_graph(2);
        assert_eq!((g.n(), g.m()), (6, 7));
        let g = chained_triangle_graph(5);
        assert_eq!(g.m(), 4 * 5 - 1);
        assert!((0..g.n()).all(|v| g.degree(v) <= 3));
        assert!((1..g.n()).all(|v| g.has_edge(v - 1, v)));
        assert_eq!(chained_triangles(2).unwrap().agreement(), chained_triangle_graph(2));
    }

    #[test]
    fn gnp_extremes() {
        assert_eq!(random_gnp(5, 0.0, 1).unwrap().conflicts.m(), 0);
        assert_eq!(random_gnp(5, 1.0, 1).unwrap().conflicts.m(), 10);
        assert_eq!(random_gnp(30, 0.3, 9), random_gnp(30, 0.3, 9));
        assert!(random_gnp(3, 1.5, 0).is_err());
        assert!(random_gnp(0, 0.5, 0).is_err());
    }

    #[test]
    fn two_clique_instances() {
        let inst = two_cliques(3, 5, 1, 4).unwrap();
        assert!(inst.is_unit());
        let part = recognize_two_cliques(&inst.conflicts).unwrap();
        assert_eq!(part.side_a, vec![0, 1, 2]);
        assert_eq!(part.side_b, vec![3, 4]);

        let inst = two_cliques(4, 9, 100, 7).unwrap();
        assert!(inst.jobs.iter().all(|j| (1..=100).contains(&j.p1) && (1..=100).contains(&j.p2)));
        assert!(two_cliques(6, 5, 1, 0).is_err());
        assert!(two_cliques(1, 5, 0, 0).is_err());
    }

    #[test]
    fn unit_from_graph_drops_times() {
        let inst = unit_from_graph("p fsc 2 1\nj 0 3 4\nj 1 5 6\ne 0 1\n").unwrap();
        assert!(inst.is_unit());
        assert_eq!(inst.conflicts.m(), 1);
    }
}
