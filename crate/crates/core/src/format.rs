//! Plain-text instance files.
//!
//! ```text
//! c comment lines start with 'c'
//! p fsc <n> <m>
//! j <idx> <p1> <p2>     (optional, exactly n of them when present)
//! e <u> <v>             (exactly m of them, 0-based)
//! ```
//!
//! Without `j` lines every job is a unit job.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::schedule::{Instance, Job};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based line number; 0 when the problem is the file as a whole.
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing header line `p fsc <n> <m>`")]
    MissingHeader,
    #[error("malformed header: {0}")]
    BadHeader(String),
    #[error("malformed line: {0}")]
    BadLine(String),
    #[error("unknown line type `{0}`")]
    UnknownLine(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("job {0} listed twice")]
    DuplicateJob(usize),
    #[error("expected {expected} edge lines, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("expected {expected} job lines, found {found}")]
    JobCount { expected: usize, found: usize },
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn numbers<const K: usize>(line: usize, raw: &str, fields: &[&str]) -> Result<[u64; K], ParseError> {
    if fields.len() != K {
        return Err(err(line, ParseErrorKind::BadLine(raw.to_string())));
    }
    let mut out = [0u64; K];
    for (slot, f) in out.iter_mut().zip(fields) {
        *slot = f
            .parse()
            .map_err(|_| err(line, ParseErrorKind::BadLine(raw.to_string())))?;
    }
    Ok(out)
}

/// Parses an instance file. Edge and job line order is irrelevant.
pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut jobs: Vec<Option<Job>> = Vec::new();
    let mut job_lines = 0;
    let mut edges = Vec::new();
    let mut edge_lines = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let fields: Vec<&str> = raw.split_whitespace().collect();
        let Some(&tag) = fields.first() else {
            continue;
        };
        if tag.starts_with('c') {
            continue;
        }
        let Some((n, _)) = header else {
            if tag != "p" {
                return Err(err(line, ParseErrorKind::MissingHeader));
            }
            if fields.len() != 4 || fields[1] != "fsc" {
                return Err(err(line, ParseErrorKind::BadHeader(raw.to_string())));
            }
            let [n, m] = numbers::<2>(line, raw, &fields[2..])
                .map_err(|_| err(line, ParseErrorKind::BadHeader(raw.to_string())))?;
            header = Some((n as usize, m as usize));
            jobs = vec![None; n as usize];
            continue;
        };
        match tag {
            "e" => {
                let [u, v] = numbers::<2>(line, raw, &fields[1..])?;
                let (u, v) = (u as usize, v as usize);
                // Validate per line so errors carry the offending line number.
                Graph::from_edges(n, [(u, v)]).map_err(|e| err(line, e.into()))?;
                edges.push((u, v));
                edge_lines.push(line);
            }
            "j" => {
                let [j, p1, p2] = numbers::<3>(line, raw, &fields[1..])?;
                let j = j as usize;
                if j >= n {
                    return Err(err(
                        line,
                        GraphError::VertexOutOfRange { vertex: j, n }.into(),
                    ));
                }
                if jobs[j].replace(Job { p1, p2 }).is_some() {
                    return Err(err(line, ParseErrorKind::DuplicateJob(j)));
                }
                job_lines += 1;
            }
            "p" => return Err(err(line, ParseErrorKind::BadLine(raw.to_string()))),
            other => return Err(err(line, ParseErrorKind::UnknownLine(other.to_string()))),
        }
    }

    let (n, m) = header.ok_or(err(0, ParseErrorKind::MissingHeader))?;
    if edges.len() != m {
        return Err(err(
            0,
            ParseErrorKind::EdgeCount {
                expected: m,
                found: edges.len(),
            },
        ));
    }
    if job_lines != 0 && job_lines != n {
        return Err(err(
            0,
            ParseErrorKind::JobCount {
                expected: n,
                found: job_lines,
            },
        ));
    }
    let conflicts = Graph::from_edges(n, edges.iter().copied()).map_err(|e| {
        // Only duplicates can fail here; report the second occurrence.
        let line = match e {
            GraphError::DuplicateEdge(a, b) => edges
                .iter()
                .zip(&edge_lines)
                .filter(|(&(u, v), _)| (u.min(v), u.max(v)) == (a, b))
                .nth(1)
                .map_or(0, |(_, &l)| l),
            _ => 0,
        };
        err(line, e.into())
    })?;
    let jobs = if job_lines == 0 {
        vec![Job::UNIT; n]
    } else {
        jobs.into_iter().map(|j| j.expect("all jobs listed")).collect()
    };
    Ok(Instance::new(jobs, conflicts).expect("job count matches vertex count"))
}

/// Parses an instance file and returns its conflict graph.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    parse_instance(text).map(|inst| inst.conflicts)
}

/// Renders an instance in the file format. `j` lines are written only when
/// some job is not a unit job.
pub fn write_instance(inst: &Instance, comments: &[String]) -> String {
    let mut out = String::new();
    for c in comments {
        let _ = writeln!(out, "c {c}");
    }
    let _ = writeln!(out, "p fsc {} {}", inst.n(), inst.conflicts.m());
    if !inst.is_unit() {
        for (j, job) in inst.jobs.iter().enumerate() {
            let _ = writeln!(out, "j {j} {} {}", job.p1, job.p2);
        }
    }
    for &(u, v) in inst.conflicts.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        let g = parse_graph("p fsc 3 2\ne 0 1\ne 1 2").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edges(), &[(0, 1), (1, 2)]);

        let g = parse_graph("p fsc 2 0").unwrap();
        assert_eq!((g.n(), g.m()), (2, 0));
    }

    #[test]
    fn self_loop_names_line() {
        let e = parse_graph("p fsc 2 1\ne 0 0").unwrap_err();
        assert_eq!(e.line, 2);
        assert_eq!(e.kind, ParseErrorKind::Graph(GraphError::SelfLoop(0)));
    }

    #[test]
    fn duplicate_edge_names_second_line() {
        let e = parse_graph("p fsc 3 2\ne 0 1\nc x\ne 1 0\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert_eq!(e.kind, ParseErrorKind::Graph(GraphError::DuplicateEdge(0, 1)));
    }

    #[test]
    fn other_errors() {
        assert_eq!(parse_graph("e 0 1").unwrap_err().kind, ParseErrorKind::MissingHeader);
        assert_eq!(parse_graph("").unwrap_err().line, 0);
        assert!(matches!(
            parse_graph("p fsc x 1").unwrap_err().kind,
            ParseErrorKind::BadHeader(_)
        ));
        assert!(matches!(
            parse_graph("p edge 3 1").unwrap_err().kind,
            ParseErrorKind::BadHeader(_)
        ));
        let e = parse_graph("p fsc 3 1\ne 0 5").unwrap_err();
        assert_eq!(e.line, 2);
        assert_eq!(
            e.kind,
            ParseErrorKind::Graph(GraphError::VertexOutOfRange { vertex: 5, n: 3 })
        );
        assert_eq!(
            parse_graph("p fsc 3 2\ne 0 1").unwrap_err().kind,
            ParseErrorKind::EdgeCount {
                expected: 2,
                found: 1
            }
        );
        assert!(matches!(
            parse_graph("p fsc 3 1\ne 0").unwrap_err().kind,
            ParseErrorKind::BadLine(_)
        ));
        assert!(matches!(
            parse_graph("p fsc 3 1\nx 0 1").unwrap_err().kind,
            ParseErrorKind::UnknownLine(_)
        ));
    }

    #[test]
    fn job_lines() {
        let inst = parse_instance("p fsc 2 1\nj 1 4 5\nj 0 2 3\ne 0 1\n").unwrap();
        assert_eq!(inst.jobs, vec![Job { p1: 2, p2: 3 }, Job { p1: 4, p2: 5 }]);
        assert!(!inst.is_unit());

        let e = parse_instance("p fsc 2 0\nj 0 1 1\n").unwrap_err();
        assert_eq!(
            e.kind,
            ParseErrorKind::JobCount {
                expected: 2,
                found: 1
            }
        );
        let e = parse_instance("p fsc 2 0\nj 0 1 1\nj 0 1 1\n").unwrap_err();
        assert_eq!((e.line, e.kind), (3, ParseErrorKind::DuplicateJob(0)));

        assert!(parse_instance("p fsc 2 0").unwrap().is_unit());
    }

    #[test]
    fn write_then_parse() {
        let inst = parse_instance("c hi\np fsc 3 2\nj 0 1 2\nj 1 3 4\nj 2 5 6\ne 2 1\ne 0 2\n").unwrap();
        let text = write_instance(&inst, &["again".to_string()]);
        assert!(text.starts_with("c again\np fsc 3 2\nj 0 1 2\n"));
        assert_eq!(parse_instance(&text).unwrap(), inst);
    }
}
