//! Oracle cross-checks bundled as suites for the command line.

use rand::Rng;

use crate::generate::{chained_triangle_graph, gnp_graph, rng, two_cliques};
use crate::graph::{recognize_two_cliques, Graph};
use crate::oracle::{
    brute_cover_stats, brute_max_two_matching, brute_two_clique_bound, brute_unit_optimum,
    branch_max_two_matching, MAX_EDGES_TWO_MATCHING,
};
use crate::path_cover::{algorithm_a, algorithm_b, algorithm_b_matching, refine_to_min_singletons};
use crate::schedule::{
    algorithm_c, lower_bound_two_cliques, makespan_identity_check, solve_unit, validate_schedule,
    AggregatedPair, Instance, UnitMode,
};
use crate::two_matching::{adjacent_ends, maximum_two_matching};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    SmallExhaustive,
    Random,
    Ratios,
}

/// Outcome of one suite.
#[derive(Debug, Clone, Default, PartialEq, Eq, serde::Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        SuiteReport {
            suite: name.to_string(),
            ..Default::default()
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn run(suite: Suite, seed: u64) -> SuiteReport {
    match suite {
        Suite::SmallExhaustive => small_exhaustive(5),
        Suite::Random => random(seed, 300),
        Suite::Ratios => ratios(seed, 300),
    }
}

/// Every check that applies to a single agreement graph with at most ten
/// vertices.
fn check_graph(r: &mut SuiteReport, host: &Graph) {
    let m = maximum_two_matching(host);
    if host.m() <= MAX_EDGES_TWO_MATCHING {
        let want = brute_max_two_matching(host).expect("guarded");
        r.check(m.len() == want, || format!("2-matching size {} != {want} on {host:?}", m.len()));
    }
    if host.n() <= 7 {
        let want = branch_max_two_matching(host).expect("guarded");
        r.check(m.len() == want, || format!("2-matching size {} != {want} (branch) on {host:?}", m.len()));
    }
    let dec = m.decompose();
    r.check(adjacent_ends(host, &dec).is_none(), || format!("adjacent ends on {host:?}"));

    let stats = brute_cover_stats(host).expect("guarded");
    let a = algorithm_a(host);
    let b = algorithm_b(host);
    let refined = refine_to_min_singletons(host, algorithm_b_matching(host));
    for cover in [&a, &b, &refined] {
        r.check(cover.validate(host).is_ok(), || format!("invalid cover {cover:?} on {host:?}"));
    }
    r.check(a.num_0_paths() == stats.min_num_0_paths, || {
        format!("A leaves {} singletons, optimum {} on {host:?}", a.num_0_paths(), stats.min_num_0_paths)
    });
    r.check(b.counts().short() == stats.min_num_01_paths, || {
        format!("B leaves {} short paths, optimum {} on {host:?}", b.counts().short(), stats.min_num_01_paths)
    });
    let got = (refined.counts().short(), refined.num_0_paths());
    let want = (stats.min_num_01_paths, stats.joint_min_0_paths);
    r.check(got == want, || format!("refinement gives {got:?}, optimum {want:?} on {host:?}"));

    let inst = Instance::unit(host.complement());
    let opt = (host.n() + stats.min_num_paths) as u64;
    for mode in [UnitMode::A, UnitMode::B, UnitMode::BRefined] {
        let sol = solve_unit(&inst, mode).expect("unit instance");
        let s = &sol.schedule;
        r.check(validate_schedule(&inst, s).is_ok(), || format!("invalid {mode} schedule on {host:?}"));
        r.check(makespan_identity_check(&sol.cover, s).is_ok(), || {
            format!("{mode} makespan {} is not jobs plus paths on {host:?}", s.makespan)
        });
        r.check(sol.lower_bound <= opt, || format!("bound {} above optimum {opt}", sol.lower_bound));
        let (num, den) = if mode == UnitMode::A { (3, 2) } else { (4, 3) };
        r.check(den * s.makespan <= num * opt, || {
            format!("{mode} makespan {} exceeds {num}/{den} of {opt} on {host:?}", s.makespan)
        });
    }
}

fn check_two_cliques(r: &mut SuiteReport, inst: &Instance, with_brute: bool) {
    let Some(part) = recognize_two_cliques(&inst.conflicts) else {
        r.check(false, || format!("two-clique instance not recognized: {inst:?}"));
        return;
    };
    let s = algorithm_c(inst, &part).expect("certified partition");
    let lb = lower_bound_two_cliques(inst, &part).expect("certified partition");
    let formula = AggregatedPair::new(inst, &part).johnson_makespan();
    r.check(validate_schedule(inst, &s).is_ok(), || format!("invalid C schedule on {inst:?}"));
    r.check(s.makespan == formula, || format!("C makespan {} != {formula}", s.makespan));
    r.check(2 * s.makespan <= 3 * lb, || format!("C makespan {} above 3/2 of {lb}", s.makespan));
    if with_brute {
        let ub = brute_two_clique_bound(inst, &part).expect("guarded");
        r.check(lb <= ub, || format!("lower bound {lb} above permutation optimum {ub}"));
    }
}

/// All labeled graphs on up to `max_n` vertices.
pub fn small_exhaustive(max_n: usize) -> SuiteReport {
    let mut r = SuiteReport::new("small-exhaustive");
    for n in 0..=max_n {
        for mask in 0..1u64 << (n * n.saturating_sub(1) / 2) {
            check_graph(&mut r, &Graph::from_pair_mask(n, mask));
        }
    }
    r
}

/// Random agreement graphs on up to ten vertices and random two-clique
/// instances.
pub fn random(seed: u64, count: usize) -> SuiteReport {
    let mut r = SuiteReport::new("random");
    let mut rng = rng(seed);
    for _ in 0..count {
        let n = rng.gen_range(1..=10);
        let p = rng.gen_range(0.0..=1.0);
        check_graph(&mut r, &gnp_graph(n, p, &mut rng));
        let n = rng.gen_range(1..=40);
        let l = rng.gen_range(0..=n);
        let inst = two_cliques(l, n, 100, rng.gen()).expect("valid parameters");
        check_two_cliques(&mut r, &inst, false);
    }
    r
}

/// Approximation ratios against exact optima on small instances, plus the
/// chained-triangle family.
pub fn ratios(seed: u64, count: usize) -> SuiteReport {
    let mut r = SuiteReport::new("ratios");
    let mut rng = rng(seed);
    for _ in 0..count {
        let n = rng.gen_range(1..=8);
        let inst = Instance::unit(gnp_graph(n, rng.gen_range(0.0..=1.0), &mut rng));
        let opt = brute_unit_optimum(&inst).expect("guarded");
        for (mode, num, den) in [(UnitMode::A, 3, 2), (UnitMode::B, 4, 3)] {
            let c = solve_unit(&inst, mode).expect("unit").schedule.makespan;
            r.check(den * c <= num * opt, || format!("{mode} makespan {c} vs optimum {opt} on {inst:?}"));
        }
        let n = rng.gen_range(1..=7);
        let l = rng.gen_range(0..=n);
        let inst = two_cliques(l, n, 20, rng.gen()).expect("valid parameters");
        check_two_cliques(&mut r, &inst, true);
    }
    for k in 2..=5 {
        let host = chained_triangle_graph(k);
        let inst = Instance::unit(host.complement());
        let n = 3 * k as u64;
        let c = solve_unit(&inst, UnitMode::B).expect("unit").schedule.makespan;
        r.check(3 * c <= 4 * (n + 1), || format!("chain k={k}: makespan {c}"));
    }
    r
}
