use proptest::prelude::*;

use fsc::format::{parse_instance, write_instance};
use fsc::graph::{recognize_two_cliques, Graph};
use fsc::oracle::brute_cover_stats;
use fsc::path_cover::{
    algorithm_b, algorithm_b_matching, apply_swap, find_saving_path, refine_to_min_singletons, Rule,
};
use fsc::schedule::{Instance, Job};
use fsc::two_matching::{adjacent_ends, maximum_two_matching};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let edges = pairs.zip(&bits).filter(|(_, &b)| b).map(|(e, _)| e);
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn is_complete_bipartite(g: &Graph, a: &[usize], b: &[usize]) -> bool {
    let mut side = vec![0u8; g.n()];
    for &v in b {
        side[v] = 1;
    }
    g.m() == a.len() * b.len() && g.edges().iter().all(|&(u, v)| side[u] != side[v])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn complement_is_an_involution(g in graph(11)) {
        let c = g.complement();
        prop_assert_eq!(c.complement(), g.clone());
        prop_assert_eq!(g.m() + c.m(), g.n() * g.n().saturating_sub(1) / 2);
    }

    #[test]
    fn two_cliques_iff_complement_is_complete_bipartite(g in graph(8)) {
        let c = g.complement();
        match recognize_two_cliques(&g) {
            Some(p) => {
                prop_assert!(p.certifies(&g));
                prop_assert!(is_complete_bipartite(&c, &p.side_a, &p.side_b));
            }
            None => {
                // No split of the vertices makes the complement complete bipartite.
                let n = g.n();
                for mask in 0..1u32 << n {
                    let a: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 1).collect();
                    let b: Vec<usize> = (0..n).filter(|v| mask >> v & 1 == 0).collect();
                    prop_assert!(!is_complete_bipartite(&c, &a, &b));
                }
            }
        }
    }

    #[test]
    fn swaps_keep_a_maximum_two_matching(g in graph(12), short in any::<bool>()) {
        let rule = if short { Rule::ShortPaths } else { Rule::Singletons };
        let deficiency = |d: &fsc::two_matching::MatchingDecomposition| match rule {
            Rule::Singletons => d.p0.len(),
            Rule::ShortPaths => d.p0.len() + d.p1.len(),
        };
        let mut m = maximum_two_matching(&g);
        let size = m.len();
        let mut rounds = 0;
        while let Some(ap) = find_saving_path(&g, &m, rule) {
            prop_assert_eq!(ap.add_edges.len(), ap.remove_edges.len());
            let before = deficiency(&m.decompose());
            m = apply_swap(&m, &ap).unwrap();
            let dec = m.decompose();
            prop_assert_eq!(m.len(), size);
            prop_assert!((0..g.n()).all(|v| m.degree(v) <= 2));
            prop_assert_eq!(deficiency(&dec) + 1, before);
            prop_assert_eq!(adjacent_ends(&g, &dec), None);
            rounds += 1;
            prop_assert!(rounds <= g.n());
        }
    }

    #[test]
    fn refinement_never_adds_short_paths(g in graph(14)) {
        let b = algorithm_b(&g);
        let r = refine_to_min_singletons(&g, algorithm_b_matching(&g));
        prop_assert!(r.validate(&g).is_ok());
        prop_assert_eq!(r.num_0_paths() + r.num_1_paths(), b.num_0_paths() + b.num_1_paths());
        prop_assert!(r.num_0_paths() <= b.num_0_paths());
    }

    #[test]
    fn instance_files_round_trip(g in graph(9), times in proptest::collection::vec((0u64..50, 0u64..50), 9)) {
        let jobs: Vec<Job> = times[..g.n()].iter().map(|&(p1, p2)| Job { p1, p2 }).collect();
        let inst = Instance::new(jobs, g).unwrap();
        let text = write_instance(&inst, &["round trip".to_string()]);
        prop_assert_eq!(parse_instance(&text).unwrap(), inst);
    }
}

#[test]
fn refinement_trade_found_by_search() {
    // Smallest host (by vertex count, then edge mask) where Algorithm B alone
    // keeps a singleton that the refinement trades for a 1-path.
    let mut found = None;
    'outer: for n in 1..=7usize {
        for mask in 0..1u64 << (n * (n - 1) / 2) {
            let g = Graph::from_pair_mask(n, mask);
            let b = algorithm_b(&g);
            if (b.num_0_paths(), b.num_1_paths()) != (1, 0) {
                continue;
            }
            let r = refine_to_min_singletons(&g, algorithm_b_matching(&g));
            if (r.num_0_paths(), r.num_1_paths()) == (0, 1) {
                found = Some(g);
                break 'outer;
            }
        }
    }
    let g = found.expect("a trading host exists with at most seven vertices");
    let stats = brute_cover_stats(&g).unwrap();
    assert_eq!((stats.min_num_01_paths, stats.joint_min_0_paths), (1, 0));
}
