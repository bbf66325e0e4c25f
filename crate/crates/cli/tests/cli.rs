use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn fsc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fsc")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn field(out: &str, key: &str) -> String {
    out.lines()
        .find_map(|l| l.strip_prefix(&format!("{key} ")))
        .unwrap_or_else(|| panic!("no `{key}` in {out}"))
        .to_string()
}

fn without_timing(out: &str) -> String {
    out.lines().filter(|l| !l.starts_with("wall_ms")).collect::<Vec<_>>().join("\n")
}

#[test]
fn gen_then_solve_chained_triangles() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("chain.txt");
    let p = path.to_str().unwrap();
    let o = fsc(&["gen", "--family", "chained-triangles", "--k", "2", "--out", p]);
    assert!(o.status.success(), "{o:?}");
    assert!(Path::new(p).exists());

    let o = fsc(&["solve-unit", p, "--mode", "B", "--gantt"]);
    assert!(o.status.success(), "{o:?}");
    let out = stdout(&o);
    let makespan: u64 = field(&out, "makespan").parse().unwrap();
    assert!(makespan <= 9, "{out}");
    assert!(out.contains("M1 |") && out.contains("M2 |"));
    // One line per job before the makespan line.
    assert_eq!(out.lines().take_while(|l| !l.starts_with("makespan")).count(), 6);
}

#[test]
fn solve_cliques_example() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "pair.txt", "p fsc 2 0\nj 0 2 3\nj 1 4 5\n");
    let o = fsc(&["solve-cliques", &p]);
    assert!(o.status.success(), "{o:?}");
    let out = stdout(&o);
    assert_eq!(field(&out, "makespan"), "11");
    assert_eq!(field(&out, "lower_bound"), "9");
    assert_eq!(field(&out, "ratio"), "1.2222");
}

#[test]
fn matching_and_pathcover_output() {
    let dir = TempDir::new().unwrap();
    // Conflicts form a triangle plus an isolated vertex: the agreement graph
    // is a star centered at 3.
    let p = write(&dir, "star.txt", "p fsc 4 3\ne 0 1\ne 1 2\ne 0 2\n");
    let o = fsc(&["matching", &p]);
    assert_eq!(stdout(&o), "size 2\np0 1 p1 0 p2 1 p3 0 p4 0 p_ge5 0 cycles 0\n");

    let o = fsc(&["pathcover", &p, "--mode", "A"]);
    let out = stdout(&o);
    assert!(out.ends_with("paths 2 zero_paths 1 one_paths 0\n"), "{out}");

    let o = fsc(&["pathcover", &p, "--mode", "B-refined", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["counts"]["paths"], 2);
}

#[test]
fn json_solve_report() {
    let dir = TempDir::new().unwrap();
    let p = write(&dir, "empty.txt", "p fsc 6 0\n");
    let o = fsc(&["solve-unit", &p, "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["report"]["makespan"], 7);
    assert_eq!(v["schedule"]["start1"].as_array().unwrap().len(), 6);
}

#[test]
fn repeated_runs_are_identical() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("g.txt");
    let p = path.to_str().unwrap();
    let gen = |out: &str| fsc(&["gen", "--family", "gnp", "--n", "40", "--p", "0.3", "--seed", "7", "--out", out]);
    assert!(gen(p).status.success());
    let first = std::fs::read(p).unwrap();
    assert!(gen(p).status.success());
    assert_eq!(first, std::fs::read(p).unwrap());

    let a = stdout(&fsc(&["solve-unit", p, "--mode", "B-refined"]));
    let b = stdout(&fsc(&["solve-unit", p, "--mode", "B-refined"]));
    assert_eq!(without_timing(&a), without_timing(&b));
}

#[test]
fn errors_and_exit_codes() {
    let dir = TempDir::new().unwrap();
    let weighted = write(&dir, "w.txt", "p fsc 2 0\nj 0 2 3\nj 1 4 5\n");
    let o = fsc(&["solve-unit", &weighted]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("non-unit"));

    let path3 = write(&dir, "p3.txt", "p fsc 3 2\ne 0 1\ne 1 2\n");
    assert_eq!(fsc(&["solve-cliques", &path3]).status.code(), Some(1));

    let broken = write(&dir, "bad.txt", "p fsc 2 1\ne 0 0\n");
    let o = fsc(&["matching", &broken]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    assert_eq!(fsc(&["matching", "/nonexistent/file"]).status.code(), Some(1));
    assert_eq!(fsc(&["pathcover"]).status.code(), Some(1));
    assert_eq!(fsc(&["gen", "--family", "gnp", "--n", "3", "--p", "2"]).status.code(), Some(1));
    assert!(fsc(&["--help"]).status.success());
}

#[test]
fn verify_suites_pass() {
    let o = fsc(&["verify", "--suite", "small-exhaustive"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("failures 0"));
    let o = fsc(&["verify", "--suite", "ratios", "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn bench_reports_sorted() {
    let o = fsc(&["bench", "--family", "gnp", "--sizes", "30,10", "--repeat", "2", "--p", "0.4"]);
    assert!(o.status.success(), "{o:?}");
    let out = stdout(&o);
    let ids: Vec<&str> = out.lines().map(|l| l.split(' ').next().unwrap()).collect();
    assert_eq!(ids, ["gnp-n10-r0", "gnp-n10-r1", "gnp-n30-r0", "gnp-n30-r1"]);

    let o = fsc(&["bench", "--family", "two-cliques", "--sizes", "20", "--repeat", "1", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v[0]["ratio"].as_f64().unwrap() <= 1.5);
}

#[test]
fn unit_from_graph_family() {
    let dir = TempDir::new().unwrap();
    let src = write(&dir, "w.txt", "p fsc 2 1\nj 0 2 3\nj 1 4 5\ne 0 1\n");
    let o = fsc(&["gen", "--family", "unit-from-graph", "--input", &src]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("p fsc 2 1\ne 0 1\n"), "{out}");
    assert!(!out.contains("\nj "));
}
