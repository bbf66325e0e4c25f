//! Exhaustive reference solvers for small instances.
//!
//! None of these share code with the solvers they check. Each has a hard size
//! guard and returns [`OracleError::TooLarge`] rather than running for hours.

use thiserror::Error;

use crate::graph::{CliquePartition, Graph};
use crate::schedule::{Instance, Job};

pub const MAX_EDGES_TWO_MATCHING: usize = 25;
pub const MAX_VERTICES_BRANCH: usize = 12;
pub const MAX_VERTICES_COVER: usize = 10;
pub const MAX_JOBS_UNIT_SEARCH: usize = 8;
pub const MAX_JOBS_PERMUTATION: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{what} is {actual}, oracle limit is {limit}")]
    TooLarge {
        what: &'static str,
        actual: usize,
        limit: usize,
    },
    #[error("instance has non-unit jobs")]
    NotUnit,
    #[error("partition does not split the conflict graph into two cliques")]
    NotTwoCliques,
}

fn guard(what: &'static str, actual: usize, limit: usize) -> Result<(), OracleError> {
    if actual > limit {
        Err(OracleError::TooLarge { what, actual, limit })
    } else {
        Ok(())
    }
}

/// Largest 2-matching, by include/exclude recursion over the edge list.
pub fn brute_max_two_matching(g: &Graph) -> Result<usize, OracleError> {
    guard("edge count", g.m(), MAX_EDGES_TWO_MATCHING)?;
    fn go(edges: &[(usize, usize)], deg: &mut [u8], taken: usize, best: &mut usize) {
        if taken + edges.len() <= *best {
            return;
        }
        let Some((&(u, v), rest)) = edges.split_first() else {
            *best = taken;
            return;
        };
        if deg[u] < 2 && deg[v] < 2 {
            deg[u] += 1;
            deg[v] += 1;
            go(rest, deg, taken + 1, best);
            deg[u] -= 1;
            deg[v] -= 1;
        }
        go(rest, deg, taken, best);
    }
    let mut best = 0;
    go(g.edges(), &mut vec![0; g.n()], 0, &mut best);
    Ok(best)
}

/// Largest 2-matching, by branching per vertex on which of its remaining
/// edges to keep. Bounded by half the total spare degree.
pub fn branch_max_two_matching(g: &Graph) -> Result<usize, OracleError> {
    guard("vertex count", g.n(), MAX_VERTICES_BRANCH)?;
    struct State<'a> {
        g: &'a Graph,
        cap: Vec<usize>,
        done: Vec<bool>,
        best: usize,
    }
    fn bound(s: &State<'_>) -> usize {
        // Each future edge uses two units of spare capacity at open vertices.
        let spare: usize = (0..s.g.n())
            .filter(|&v| !s.done[v])
            .map(|v| s.cap[v].min(s.g.neighbors(v).iter().filter(|&&w| !s.done[w]).count()))
            .sum();
        spare / 2
    }
    fn go(s: &mut State<'_>, taken: usize) {
        s.best = s.best.max(taken);
        if taken + bound(s) <= s.best {
            return;
        }
        let Some(v) = (0..s.g.n()).find(|&v| !s.done[v]) else {
            return;
        };
        s.done[v] = true;
        let open: Vec<usize> = s
            .g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| !s.done[w] && s.cap[w] > 0)
            .collect();
        let k = s.cap[v];
        // Choose up to k of v's open neighbors.
        let mut choices: Vec<Vec<usize>> = vec![vec![]];
        for (i, &a) in open.iter().enumerate() {
            choices.push(vec![a]);
            if k == 2 {
                choices.extend(open[i + 1..].iter().map(|&b| vec![a, b]));
            }
        }
        if k == 0 {
            choices.truncate(1);
        }
        for chosen in choices {
            for &w in &chosen {
                s.cap[w] -= 1;
            }
            go(s, taken + chosen.len());
            for &w in &chosen {
                s.cap[w] += 1;
            }
        }
        s.done[v] = false;
    }
    let mut s = State {
        g,
        cap: vec![2; g.n()],
        done: vec![false; g.n()],
        best: 0,
    };
    go(&mut s, 0);
    Ok(s.best)
}

/// Optimal values over all path covers of a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct CoverStats {
    pub min_num_paths: usize,
    pub min_num_0_paths: usize,
    pub min_num_01_paths: usize,
    /// Fewest 0-paths among covers with `min_num_01_paths` short paths.
    pub joint_min_0_paths: usize,
}

/// Enumerates all partitions of the vertex set into paths of `g`.
///
/// First finds every vertex subset whose induced subgraph has a Hamiltonian
/// path, then minimizes over set partitions into such subsets.
pub fn brute_cover_stats(g: &Graph) -> Result<CoverStats, OracleError> {
    let n = g.n();
    guard("vertex count", n, MAX_VERTICES_COVER)?;
    let full = (1usize << n) - 1;
    let adj: Vec<usize> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0, |acc, &w| acc | 1 << w))
        .collect();

    // ends[mask]: bitset of vertices at which some path through exactly `mask` ends.
    let mut ends = vec![0usize; full + 1];
    for v in 0..n {
        ends[1 << v] = 1 << v;
    }
    for mask in 1..=full {
        let e = ends[mask];
        if e == 0 {
            continue;
        }
        for v in (0..n).filter(|v| e >> v & 1 == 1) {
            let mut next = adj[v] & !mask;
            while next != 0 {
                let w = next.trailing_zeros() as usize;
                next &= next - 1;
                ends[mask | 1 << w] |= 1 << w;
            }
        }
    }

    // Costs are (paths, 0-paths, 01-paths, (01-paths, 0-paths)).
    type Cost = (usize, usize, usize, (usize, usize));
    let add = |a: Cost, b: Cost| (a.0 + b.0, a.1 + b.1, a.2 + b.2, (a.3 .0 + b.3 .0, a.3 .1 + b.3 .1));
    let best_of = |a: Cost, b: Cost| (a.0.min(b.0), a.1.min(b.1), a.2.min(b.2), a.3.min(b.3));
    let worst: Cost = (usize::MAX / 4, usize::MAX / 4, usize::MAX / 4, (usize::MAX / 4, usize::MAX / 4));
    let mut best = vec![worst; full + 1];
    best[0] = (0, 0, 0, (0, 0));
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let rest = mask ^ low;
        // Blocks containing the lowest vertex of `mask`.
        let mut sub = rest;
        let mut acc = worst;
        loop {
            let block = sub | low;
            if ends[block] != 0 {
                let size = block.count_ones() as usize;
                let zero = usize::from(size == 1);
                let short = usize::from(size <= 2);
                acc = best_of(acc, add((1, zero, short, (short, zero)), best[mask ^ block]));
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        best[mask] = acc;
    }
    let (paths, zero, short, joint) = best[full];
    Ok(CoverStats {
        min_num_paths: paths,
        min_num_0_paths: zero,
        min_num_01_paths: short,
        joint_min_0_paths: joint.1,
    })
}

fn require_unit(inst: &Instance) -> Result<(), OracleError> {
    if inst.jobs.iter().all(|&j| j == Job::UNIT) {
        Ok(())
    } else {
        Err(OracleError::NotUnit)
    }
}

/// Optimal unit makespan as jobs plus the fewest paths covering the
/// agreement graph.
pub fn brute_unit_optimum(inst: &Instance) -> Result<u64, OracleError> {
    require_unit(inst)?;
    let stats = brute_cover_stats(&inst.conflicts.complement())?;
    Ok((inst.n() + stats.min_num_paths) as u64)
}

/// Optimal unit makespan by shortest path over schedule states.
///
/// A state records which jobs finished on M1 and which on M2. Each time unit
/// M1 takes at most one new job and M2 at most one job already done on M1;
/// the two may run together only if they do not conflict.
pub fn brute_unit_makespan(inst: &Instance) -> Result<u64, OracleError> {
    require_unit(inst)?;
    let n = inst.n();
    guard("job count", n, MAX_JOBS_UNIT_SEARCH)?;
    let full = (1usize << n) - 1;
    let key = |d1: usize, d2: usize| d1 << n | d2;
    let mut dist = vec![u64::MAX; 1 << (2 * n)];
    let mut queue = std::collections::VecDeque::new();
    dist[key(0, 0)] = 0;
    queue.push_back((0usize, 0usize));
    while let Some((d1, d2)) = queue.pop_front() {
        let here = dist[key(d1, d2)];
        if d1 == full && d2 == full {
            return Ok(here);
        }
        let m1: Vec<Option<usize>> = std::iter::once(None)
            .chain((0..n).filter(|a| d1 >> a & 1 == 0).map(Some))
            .collect();
        let m2: Vec<Option<usize>> = std::iter::once(None)
            .chain((0..n).filter(|b| d1 >> b & 1 == 1 && d2 >> b & 1 == 0).map(Some))
            .collect();
        for &a in &m1 {
            for &b in &m2 {
                let (nd1, nd2) = match (a, b) {
                    (None, None) => continue,
                    (Some(a), Some(b)) if inst.conflicts.has_edge(a, b) => continue,
                    _ => (d1 | a.map_or(0, |a| 1 << a), d2 | b.map_or(0, |b| 1 << b)),
                };
                let k = key(nd1, nd2);
                if dist[k] == u64::MAX {
                    dist[k] = here + 1;
                    queue.push_back((nd1, nd2));
                }
            }
        }
    }
    Ok(0)
}

/// Best makespan over permutation schedules of a two-clique instance.
///
/// Each order is timed greedily: every operation starts at the earliest time
/// that respects its machine, the flow order and every conflict with an
/// operation already placed. This is an upper bound on the optimum.
pub fn brute_two_clique_bound(inst: &Instance, part: &CliquePartition) -> Result<u64, OracleError> {
    let n = inst.n();
    guard("job count", n, MAX_JOBS_PERMUTATION)?;
    if !part.certifies(&inst.conflicts) {
        return Err(OracleError::NotTwoCliques);
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut best = u64::MAX;
    permute(&mut order, 0, &mut |perm| {
        best = best.min(time_permutation(inst, perm));
    });
    Ok(if n == 0 { 0 } else { best })
}

fn permute(items: &mut [usize], k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        visit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, visit);
        items.swap(k, i);
    }
}

/// Earliest `t >= from` such that `[t, t + len)` misses every interval.
fn earliest(from: u64, len: u64, busy: &[(u64, u64)]) -> u64 {
    let mut t = from;
    if len == 0 {
        return t;
    }
    loop {
        match busy.iter().find(|&&(s, e)| s < e && t < e && s < t + len) {
            Some(&(_, e)) => t = e,
            None => return t,
        }
    }
}

fn time_permutation(inst: &Instance, perm: &[usize]) -> u64 {
    let n = inst.n();
    let mut m1 = vec![(0u64, 0u64); n];
    let mut m2 = vec![(0u64, 0u64); n];
    let mut placed: Vec<usize> = Vec::with_capacity(n);
    let (mut free1, mut free2) = (0u64, 0u64);
    let mut makespan = 0;
    for &j in perm {
        let job = inst.jobs[j];
        let block1: Vec<_> = placed
            .iter()
            .filter(|&&i| inst.conflicts.has_edge(i, j))
            .map(|&i| m2[i])
            .collect();
        let s1 = earliest(free1, job.p1, &block1);
        m1[j] = (s1, s1 + job.p1);
        free1 = free1.max(s1 + job.p1);
        let block2: Vec<_> = placed
            .iter()
            .filter(|&&i| inst.conflicts.has_edge(i, j))
            .map(|&i| m1[i])
            .collect();
        let s2 = earliest(free2.max(s1 + job.p1), job.p2, &block2);
        m2[j] = (s2, s2 + job.p2);
        free2 = free2.max(s2 + job.p2);
        makespan = makespan.max(s2 + job.p2);
        placed.push(j);
    }
    makespan
}
