//! Two-machine flow-shop schedules under a conflict graph.
//!
//! Every job runs first on M1, then on M2. Two jobs joined by a conflict edge
//! may not be processed at the same time on different machines.
//!
//! For unit jobs, a path cover of the agreement graph with `l` paths gives a
//! schedule of makespan `n + l`: the jobs of one path run back to back on
//! M1 while M2 trails one unit behind. For a conflict graph made of two
//! cliques, [`algorithm_c`] merges each clique into one aggregated job and
//! orders the pair by Johnson's rule.
//!
//! ```
//! use fsc::graph::{recognize_two_cliques, Graph};
//! use fsc::schedule::{algorithm_c, lower_bound_two_cliques, Instance, Job};
//!
//! let conflicts = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
//! let inst = Instance::new(vec![Job::UNIT; 4], conflicts).unwrap();
//! let part = recognize_two_cliques(&inst.conflicts).unwrap();
//! let s = algorithm_c(&inst, &part).unwrap();
//! assert_eq!(s.makespan, 6);
//! assert_eq!(lower_bound_two_cliques(&inst, &part).unwrap(), 4);
//! ```

use std::fmt;

use thiserror::Error;

use crate::graph::{CliquePartition, Graph};
use crate::path_cover::{
    algorithm_a, algorithm_b_matching, break_cycles, refine_to_min_singletons, PathCover,
};

/// Processing times on M1 and M2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Job {
    pub p1: u64,
    pub p2: u64,
}

impl Job {
    pub const UNIT: Job = Job { p1: 1, p2: 1 };
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScheduleError {
    #[error("{jobs} jobs but the conflict graph has {vertices} vertices")]
    JobCount { jobs: usize, vertices: usize },
    #[error("instance has non-unit jobs (job {0}); use the two-clique solver")]
    NotUnit(usize),
    #[error("cover does not partition the jobs: {0}")]
    BadCover(String),
    #[error("partition does not split the conflict graph into two cliques")]
    NotTwoCliques,
}

/// Jobs plus a conflict graph over job indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub jobs: Vec<Job>,
    pub conflicts: Graph,
}

impl Instance {
    pub fn new(jobs: Vec<Job>, conflicts: Graph) -> Result<Self, ScheduleError> {
        if jobs.len() != conflicts.n() {
            return Err(ScheduleError::JobCount {
                jobs: jobs.len(),
                vertices: conflicts.n(),
            });
        }
        Ok(Instance { jobs, conflicts })
    }

    /// Unit jobs over `conflicts`.
    pub fn unit(conflicts: Graph) -> Self {
        Instance {
            jobs: vec![Job::UNIT; conflicts.n()],
            conflicts,
        }
    }

    pub fn n(&self) -> usize {
        self.jobs.len()
    }

    pub fn is_unit(&self) -> bool {
        self.jobs.iter().all(|&j| j == Job::UNIT)
    }

    /// The complement of the conflict graph.
    pub fn agreement(&self) -> Graph {
        self.conflicts.complement()
    }
}

/// Start times per job on each machine.
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Schedule {
    pub start1: Vec<u64>,
    pub start2: Vec<u64>,
    pub makespan: u64,
}

impl Schedule {
    /// Builds a schedule and sets its makespan to the last M2 completion.
    pub fn from_starts(jobs: &[Job], start1: Vec<u64>, start2: Vec<u64>) -> Self {
        let makespan = jobs
            .iter()
            .zip(&start2)
            .map(|(j, &s)| s + j.p2)
            .max()
            .unwrap_or(0);
        Schedule {
            start1,
            start2,
            makespan,
        }
    }
}

/// First broken feasibility condition found by [`validate_schedule`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("schedule lists {found} jobs, instance has {expected}")]
    Length { expected: usize, found: usize },
    #[error("job {job} starts on M2 at {start2} before finishing on M1 at {end1}")]
    FlowOrder { job: usize, end1: u64, start2: u64 },
    #[error("jobs {a} and {b} overlap on M{machine}")]
    MachineOverlap { machine: u8, a: usize, b: usize },
    #[error("conflicting jobs {on_m1} (on M1) and {on_m2} (on M2) run at the same time")]
    Conflict { on_m1: usize, on_m2: usize },
    #[error("makespan is {claimed} but the last job ends at {actual}")]
    Makespan { claimed: u64, actual: u64 },
}

fn overlaps(s: u64, p: u64, t: u64, q: u64) -> bool {
    p > 0 && q > 0 && s < t + q && t < s + p
}

/// Checks flow order, machine exclusivity, conflict feasibility and the
/// makespan of `s`. Zero-length operations occupy no time.
pub fn validate_schedule(inst: &Instance, s: &Schedule) -> Result<(), Violation> {
    let n = inst.n();
    for found in [s.start1.len(), s.start2.len()] {
        if found != n {
            return Err(Violation::Length { expected: n, found });
        }
    }
    let jobs = &inst.jobs;
    for (j, job) in jobs.iter().enumerate() {
        let end1 = s.start1[j] + job.p1;
        if s.start2[j] < end1 {
            return Err(Violation::FlowOrder {
                job: j,
                end1,
                start2: s.start2[j],
            });
        }
    }
    for (machine, starts, len) in [
        (1u8, &s.start1, jobs.iter().map(|j| j.p1).collect::<Vec<_>>()),
        (2u8, &s.start2, jobs.iter().map(|j| j.p2).collect::<Vec<_>>()),
    ] {
        let mut order: Vec<usize> = (0..n).filter(|&j| len[j] > 0).collect();
        order.sort_by_key(|&j| (starts[j], j));
        for w in order.windows(2) {
            let (a, b) = (w[0], w[1]);
            if starts[a] + len[a] > starts[b] {
                return Err(Violation::MachineOverlap {
                    machine,
                    a: a.min(b),
                    b: a.max(b),
                });
            }
        }
    }
    for &(u, v) in inst.conflicts.edges() {
        for (x, y) in [(u, v), (v, u)] {
            if overlaps(s.start1[x], jobs[x].p1, s.start2[y], jobs[y].p2) {
                return Err(Violation::Conflict { on_m1: x, on_m2: y });
            }
        }
    }
    let actual = Schedule::from_starts(jobs, Vec::new(), s.start2.clone()).makespan;
    if actual != s.makespan {
        return Err(Violation::Makespan {
            claimed: s.makespan,
            actual,
        });
    }
    Ok(())
}

/// The first time before the makespan at which both machines are idle, if
/// any. Such a gap can always be closed by shifting later work earlier.
pub fn idle_gap(inst: &Instance, s: &Schedule) -> Option<u64> {
    let mut busy: Vec<(u64, u64)> = Vec::with_capacity(2 * inst.n());
    for (j, job) in inst.jobs.iter().enumerate() {
        for (start, len) in [(s.start1[j], job.p1), (s.start2[j], job.p2)] {
            if len > 0 {
                busy.push((start, start + len));
            }
        }
    }
    busy.sort_unstable();
    let mut covered = 0;
    for (a, b) in busy {
        if a > covered {
            return Some(covered);
        }
        covered = covered.max(b);
    }
    None
}

fn check_partition(paths: &[Vec<usize>], n: usize) -> Result<(), ScheduleError> {
    let mut seen = vec![false; n];
    for &v in paths.iter().flatten() {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(ScheduleError::BadCover(format!("job {v} out of range or repeated")));
        }
    }
    match seen.iter().position(|&s| !s) {
        Some(v) => Err(ScheduleError::BadCover(format!("job {v} missing"))),
        None => Ok(()),
    }
}

/// Unit-job schedule with one block per path, in cover order.
///
/// A path `a_0, ..., a_k` starting at time `t` puts `a_i` on M1 at `t + i`
/// and on M2 at `t + i + 1`; the next block starts at `t + k + 2`.
pub fn schedule_from_cover(cover: &PathCover, n: usize) -> Result<Schedule, ScheduleError> {
    check_partition(cover.paths(), n)?;
    let mut start1 = vec![0; n];
    let mut start2 = vec![0; n];
    let mut t = 0u64;
    for path in cover.paths() {
        for (i, &job) in path.iter().enumerate() {
            start1[job] = t + i as u64;
            start2[job] = t + i as u64 + 1;
        }
        t += path.len() as u64 + 1;
    }
    Ok(Schedule {
        start1,
        start2,
        makespan: t,
    })
}

/// Checks that a unit schedule built from `cover` has makespan `n + l`.
pub fn makespan_identity_check(cover: &PathCover, s: &Schedule) -> Result<(), IdentityMismatch> {
    let expected = (cover.num_vertices() + cover.num_paths()) as u64;
    if s.makespan == expected {
        Ok(())
    } else {
        Err(IdentityMismatch {
            expected,
            found: s.makespan,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("makespan {found} differs from jobs plus paths = {expected}")]
pub struct IdentityMismatch {
    pub expected: u64,
    pub found: u64,
}

/// Path-cover algorithm behind [`solve_unit`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum UnitMode {
    /// Fewest singletons; within 3/2 of the optimum.
    A,
    /// Fewest singletons plus 1-paths; within 4/3 of the optimum.
    B,
    /// As `B`, then fewest singletons among those covers.
    BRefined,
}

impl fmt::Display for UnitMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnitMode::A => "A",
            UnitMode::B => "B",
            UnitMode::BRefined => "B-refined",
        })
    }
}

/// Result of [`solve_unit`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitSolution {
    pub cover: PathCover,
    pub schedule: Schedule,
    /// `n + max(1, s)` where `s` is the least possible number of 0- and
    /// 1-paths; every schedule is at least this long.
    pub lower_bound: u64,
}

/// Schedules a unit instance through a path cover of its agreement graph.
pub fn solve_unit(inst: &Instance, mode: UnitMode) -> Result<UnitSolution, ScheduleError> {
    if let Some(j) = inst.jobs.iter().position(|&j| j != Job::UNIT) {
        return Err(ScheduleError::NotUnit(j));
    }
    let host = inst.agreement();
    let b_matching = algorithm_b_matching(&host);
    let short = break_cycles(&b_matching).counts().short();
    let cover = match mode {
        UnitMode::A => algorithm_a(&host),
        UnitMode::B => break_cycles(&b_matching),
        UnitMode::BRefined => refine_to_min_singletons(&host, b_matching),
    };
    debug_assert_eq!(cover.validate(&host), Ok(()));
    let schedule = schedule_from_cover(&cover, inst.n())?;
    let n = inst.n() as u64;
    let lower_bound = if n == 0 { 0 } else { n + short.max(1) as u64 };
    Ok(UnitSolution {
        cover,
        schedule,
        lower_bound,
    })
}

/// Per-machine processing-time sums of the two cliques.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub struct AggregatedPair {
    pub pa1: u64,
    pub pa2: u64,
    pub pb1: u64,
    pub pb2: u64,
}

impl AggregatedPair {
    pub fn new(inst: &Instance, part: &CliquePartition) -> Self {
        let sum = |side: &[usize], f: fn(&Job) -> u64| side.iter().map(|&j| f(&inst.jobs[j])).sum();
        AggregatedPair {
            pa1: sum(&part.side_a, |j| j.p1),
            pa2: sum(&part.side_a, |j| j.p2),
            pb1: sum(&part.side_b, |j| j.p1),
            pb2: sum(&part.side_b, |j| j.p2),
        }
    }

    /// Johnson's rule for two jobs, ties to A.
    pub fn a_first(&self) -> bool {
        self.pa1.min(self.pb2) <= self.pb1.min(self.pa2)
    }

    /// Two-job flow-shop makespan in Johnson order.
    pub fn johnson_makespan(&self) -> u64 {
        if self.a_first() {
            self.pa1 + self.pa2.max(self.pb1) + self.pb2
        } else {
            self.pb1 + self.pb2.max(self.pa1) + self.pa2
        }
    }

    /// Largest of the four pairwise sums that some machine or some clique
    /// must spend serially.
    pub fn lower_bound(&self) -> u64 {
        [
            self.pa1 + self.pa2,
            self.pa1 + self.pb1,
            self.pb1 + self.pb2,
            self.pa2 + self.pb2,
        ]
        .into_iter()
        .max()
        .expect("four terms")
    }
}

fn certified(inst: &Instance, part: &CliquePartition) -> Result<AggregatedPair, ScheduleError> {
    if !part.certifies(&inst.conflicts) {
        return Err(ScheduleError::NotTwoCliques);
    }
    Ok(AggregatedPair::new(inst, part))
}

/// Schedules a two-clique instance as two aggregated jobs.
///
/// The first clique in Johnson order runs as one block on M1 from time 0 and
/// as one block on M2 right after. The second clique's M1 block follows the
/// first's, and its M2 block starts once both its own M1 block and the first
/// clique's M2 block are done. Within a block jobs run in index order.
pub fn algorithm_c(inst: &Instance, part: &CliquePartition) -> Result<Schedule, ScheduleError> {
    let agg = certified(inst, part)?;
    let (first, second) = if agg.a_first() {
        (&part.side_a, &part.side_b)
    } else {
        (&part.side_b, &part.side_a)
    };
    let n = inst.n();
    let mut start1 = vec![0; n];
    let mut start2 = vec![0; n];
    let mut place = |side: &[usize], t1: u64, m2_free: u64| {
        let mut t = t1;
        for &j in side {
            start1[j] = t;
            t += inst.jobs[j].p1;
        }
        let mut t2 = t.max(m2_free);
        for &j in side {
            start2[j] = t2;
            t2 += inst.jobs[j].p2;
        }
        (t, t2)
    };
    let (m1_done, m2_done) = place(first, 0, 0);
    place(second, m1_done, m2_done);
    let s = Schedule::from_starts(&inst.jobs, start1, start2);
    debug_assert_eq!(s.makespan, agg.johnson_makespan());
    Ok(s)
}

/// Lower bound on the optimal makespan of a two-clique instance.
pub fn lower_bound_two_cliques(inst: &Instance, part: &CliquePartition) -> Result<u64, ScheduleError> {
    Ok(certified(inst, part)?.lower_bound())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_jobs(a: Job, b: Job) -> (Instance, CliquePartition) {
        let inst = Instance::new(vec![a, b], Graph::empty(2)).unwrap();
        let part = CliquePartition {
            side_a: vec![0],
            side_b: vec![1],
        };
        (inst, part)
    }

    #[test]
    fn cover_schedules() {
        let ham = PathCover::new(vec![vec![0, 1, 2, 3, 4]]);
        let s = schedule_from_cover(&ham, 5).unwrap();
        assert_eq!(s.makespan, 6);
        assert_eq!(makespan_identity_check(&ham, &s), Ok(()));

        let singles = PathCover::singletons(4);
        assert_eq!(schedule_from_cover(&singles, 4).unwrap().makespan, 8);

        let mixed = PathCover::new(vec![vec![0, 1, 2], vec![3, 4]]);
        let s = schedule_from_cover(&mixed, 5).unwrap();
        assert_eq!(s.makespan, 7);
        assert_eq!(s.start1, vec![0, 1, 2, 4, 5]);
        assert_eq!(s.start2, vec![1, 2, 3, 5, 6]);

        assert!(schedule_from_cover(&PathCover::new(vec![vec![0, 1]]), 3).is_err());
        assert!(schedule_from_cover(&PathCover::new(vec![vec![0], vec![0]]), 1).is_err());
    }

    #[test]
    fn identity_check_examples() {
        let two = PathCover::new(vec![vec![0, 1, 2, 3], vec![4, 5, 6]]);
        let s = schedule_from_cover(&two, 7).unwrap();
        assert_eq!(s.makespan, 9);
        let wrong = Schedule { makespan: 8, ..s };
        assert_eq!(
            makespan_identity_check(&two, &wrong),
            Err(IdentityMismatch { expected: 9, found: 8 })
        );
    }

    #[test]
    fn solve_unit_examples() {
        let all_agree = Instance::unit(Graph::empty(6));
        let sol = solve_unit(&all_agree, UnitMode::B).unwrap();
        assert_eq!(sol.schedule.makespan, 7);
        assert_eq!(validate_schedule(&all_agree, &sol.schedule), Ok(()));

        let all_conflict = Instance::unit(Graph::complete(4));
        for mode in [UnitMode::A, UnitMode::B, UnitMode::BRefined] {
            let sol = solve_unit(&all_conflict, mode).unwrap();
            assert_eq!(sol.schedule.makespan, 8);
            assert_eq!(sol.lower_bound, 8);
        }

        let weighted = Instance::new(vec![Job { p1: 2, p2: 1 }], Graph::empty(1)).unwrap();
        assert_eq!(solve_unit(&weighted, UnitMode::B), Err(ScheduleError::NotUnit(0)));
    }

    #[test]
    fn algorithm_c_examples() {
        let (inst, part) = two_jobs(Job { p1: 2, p2: 3 }, Job { p1: 4, p2: 5 });
        let s = algorithm_c(&inst, &part).unwrap();
        assert_eq!(s.makespan, 11);
        assert_eq!(s.start1, vec![0, 2]);
        assert_eq!(s.start2, vec![2, 6]);
        assert_eq!(lower_bound_two_cliques(&inst, &part), Ok(9));
        assert_eq!(validate_schedule(&inst, &s), Ok(()));

        let single = Instance::unit(Graph::complete(3));
        let part = CliquePartition {
            side_a: vec![0, 1, 2],
            side_b: vec![],
        };
        let s = algorithm_c(&single, &part).unwrap();
        assert_eq!(s.makespan, 6);
        assert_eq!(lower_bound_two_cliques(&single, &part), Ok(6));
        assert_eq!(validate_schedule(&single, &s), Ok(()));
    }

    #[test]
    fn algorithm_c_orders_b_first_when_johnson_says_so() {
        let (inst, part) = two_jobs(Job { p1: 5, p2: 1 }, Job { p1: 1, p2: 5 });
        let agg = AggregatedPair::new(&inst, &part);
        assert!(!agg.a_first());
        let s = algorithm_c(&inst, &part).unwrap();
        assert_eq!(s.makespan, 1 + 5 + 1);
        assert_eq!(s.start1, vec![1, 0]);
    }

    #[test]
    fn algorithm_c_rejects_bad_partition() {
        let inst = Instance::unit(Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap());
        let part = CliquePartition {
            side_a: vec![0, 1],
            side_b: vec![2],
        };
        assert_eq!(algorithm_c(&inst, &part), Err(ScheduleError::NotTwoCliques));
    }

    #[test]
    fn validation_finds_violations() {
        let inst = Instance::unit(Graph::from_edges(2, [(0, 1)]).unwrap());
        let early = Schedule {
            start1: vec![0, 1],
            start2: vec![0, 2],
            makespan: 3,
        };
        assert_eq!(
            validate_schedule(&inst, &early),
            Err(Violation::FlowOrder { job: 0, end1: 1, start2: 0 })
        );
        let clash = Schedule {
            start1: vec![0, 1],
            start2: vec![1, 2],
            makespan: 3,
        };
        assert_eq!(
            validate_schedule(&inst, &clash),
            Err(Violation::Conflict { on_m1: 1, on_m2: 0 })
        );
        let same_slot = Schedule {
            start1: vec![0, 0],
            start2: vec![1, 2],
            makespan: 3,
        };
        assert_eq!(
            validate_schedule(&inst, &same_slot),
            Err(Violation::MachineOverlap { machine: 1, a: 0, b: 1 })
        );
        let ok = Schedule {
            start1: vec![0, 2],
            start2: vec![1, 3],
            makespan: 4,
        };
        assert_eq!(validate_schedule(&inst, &ok), Ok(()));
        assert_eq!(
            validate_schedule(&inst, &Schedule { makespan: 5, ..ok.clone() }),
            Err(Violation::Makespan { claimed: 5, actual: 4 })
        );
        assert_eq!(idle_gap(&inst, &ok), None);
        let gap = Schedule {
            start1: vec![0, 3],
            start2: vec![1, 4],
            makespan: 5,
        };
        assert_eq!(validate_schedule(&inst, &gap), Ok(()));
        assert_eq!(idle_gap(&inst, &gap), Some(2));
    }

    #[test]
    fn zero_length_operations_take_no_time() {
        let inst = Instance::new(
            vec![Job { p1: 0, p2: 2 }, Job { p1: 2, p2: 0 }],
            Graph::from_edges(2, [(0, 1)]).unwrap(),
        )
        .unwrap();
        let s = Schedule {
            start1: vec![0, 0],
            start2: vec![2, 2],
            makespan: 4,
        };
        assert_eq!(validate_schedule(&inst, &s), Ok(()));
    }
}
