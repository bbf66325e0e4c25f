//! Flow-shop scheduling with a conflict graph.
//!
//! Jobs run on two machines in the order M1 then M2, and a conflict graph
//! forbids some pairs of jobs from running at the same time on different
//! machines. For unit jobs, schedules correspond to path covers of the
//! agreement graph (the complement of the conflict graph), and the crate
//! computes covers with the fewest short paths via alternating-path
//! augmentation over a maximum 2-matching. For a conflict graph made of two
//! cliques with arbitrary times, it merges each clique into one job.
//!
//! ```
//! use fsc::graph::Graph;
//! use fsc::schedule::{solve_unit, validate_schedule, Instance, UnitMode};
//!
//! // Jobs 0-1-2 conflict along a path; 0 and 2 may overlap.
//! let inst = Instance::unit(Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap());
//! let sol = solve_unit(&inst, UnitMode::B).unwrap();
//! assert_eq!(sol.schedule.makespan, 5);
//! assert!(validate_schedule(&inst, &sol.schedule).is_ok());
//! ```

pub mod format;
pub mod generate;
pub mod graph;
pub mod matching;
pub mod oracle;
pub mod path_cover;
pub mod report;
pub mod schedule;
pub mod two_matching;
pub mod verify;

// Book chapters, compiled as doctests so their snippets stay current.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/two-matchings.md")]
    mod two_matchings {}
    #[doc = include_str!("../../../book/src/alternating-paths.md")]
    mod alternating_paths {}
    #[doc = include_str!("../../../book/src/path-covers.md")]
    mod path_covers {}
    #[doc = include_str!("../../../book/src/unit-schedules.md")]
    mod unit_schedules {}
    #[doc = include_str!("../../../book/src/two-cliques.md")]
    mod two_cliques {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
