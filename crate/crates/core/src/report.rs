//! Text rendering of schedules and run summaries.

use std::fmt::Write as _;

use crate::path_cover::{CoverCounts, PathCover};
use crate::schedule::{Instance, Schedule};

/// Summary of one solver run.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct RunReport {
    pub instance: String,
    pub algorithm: String,
    pub n: usize,
    pub makespan: u64,
    pub lower_bound: Option<u64>,
    /// `makespan / lower_bound` when a bound is known.
    pub ratio: Option<f64>,
    pub wall_ms: f64,
    pub cover: Option<CoverCounts>,
}

impl RunReport {
    pub fn new(instance: impl Into<String>, algorithm: impl Into<String>, n: usize, makespan: u64) -> Self {
        RunReport {
            instance: instance.into(),
            algorithm: algorithm.into(),
            n,
            makespan,
            lower_bound: None,
            ratio: None,
            wall_ms: 0.0,
            cover: None,
        }
    }

    pub fn with_lower_bound(mut self, lb: u64) -> Self {
        self.lower_bound = Some(lb);
        self.ratio = (lb > 0).then(|| self.makespan as f64 / lb as f64);
        self
    }

    pub fn with_cover(mut self, counts: CoverCounts) -> Self {
        self.cover = Some(counts);
        self
    }

    pub fn with_wall_ms(mut self, ms: f64) -> Self {
        self.wall_ms = ms;
        self
    }

    /// One `key value` line per field. Timing is left out when `timing` is
    /// false so that repeated runs compare equal.
    pub fn render(&self, timing: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "instance {}", self.instance);
        let _ = writeln!(out, "algorithm {}", self.algorithm);
        let _ = writeln!(out, "jobs {}", self.n);
        let _ = writeln!(out, "makespan {}", self.makespan);
        if let Some(lb) = self.lower_bound {
            let _ = writeln!(out, "lower_bound {lb}");
        }
        if let Some(r) = self.ratio {
            let _ = writeln!(out, "ratio {r:.4}");
        }
        if let Some(c) = self.cover {
            let _ = writeln!(out, "paths {} zero_paths {} one_paths {}", c.paths, c.zero, c.one);
        }
        if timing {
            let _ = writeln!(out, "wall_ms {:.3}", self.wall_ms);
        }
        out
    }
}

/// `<job> <start1> <start2>` per job, then `makespan <value>`.
pub fn schedule_text(s: &Schedule) -> String {
    let mut out = String::new();
    for (j, (a, b)) in s.start1.iter().zip(&s.start2).enumerate() {
        let _ = writeln!(out, "{j} {a} {b}");
    }
    let _ = writeln!(out, "makespan {}", s.makespan);
    out
}

/// One line per path, vertices separated by `-`.
pub fn cover_text(cover: &PathCover) -> String {
    let mut out = String::new();
    for p in cover.paths() {
        let line: Vec<String> = p.iter().map(usize::to_string).collect();
        let _ = writeln!(out, "{}", line.join("-"));
    }
    out
}

/// Gantt chart with one column per time unit, for unit jobs.
///
/// Each cell holds the job running there, right-aligned to a common width,
/// or `.` when the machine is idle. Returns `None` for non-unit instances.
pub fn gantt(inst: &Instance, s: &Schedule) -> Option<String> {
    if !inst.is_unit() {
        return None;
    }
    let width = inst.n().saturating_sub(1).to_string().len();
    let t = s.makespan as usize;
    let mut rows = [vec![None; t], vec![None; t]];
    for j in 0..inst.n() {
        rows[0][s.start1[j] as usize] = Some(j);
        rows[1][s.start2[j] as usize] = Some(j);
    }
    let mut out = String::new();
    for (name, row) in ["M1", "M2"].iter().zip(&rows) {
        let cells: Vec<String> = row
            .iter()
            .map(|c| match c {
                Some(j) => format!("{j:>width$}"),
                None => format!("{:>width$}", "."),
            })
            .collect();
        let _ = writeln!(out, "{name} |{}|", cells.join(" "));
    }
    Some(out)
}

/// Per-job operation intervals `[start, end)` on both machines.
pub fn interval_text(inst: &Instance, s: &Schedule) -> String {
    let mut out = String::new();
    for (j, job) in inst.jobs.iter().enumerate() {
        let (a, b) = (s.start1[j], s.start2[j]);
        let _ = writeln!(out, "{j} M1 [{a}, {}) M2 [{b}, {})", a + job.p1, b + job.p2);
    }
    out
}
