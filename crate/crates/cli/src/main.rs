use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use fsc::format::{parse_instance, write_instance};
use fsc::generate;
use fsc::graph::recognize_two_cliques;
use fsc::path_cover::{algorithm_a, algorithm_b, algorithm_b_matching, refine_to_min_singletons, CoverCounts, PathCover};
use fsc::report::{cover_text, gantt, interval_text, schedule_text, RunReport};
use fsc::schedule::{
    algorithm_c, idle_gap, lower_bound_two_cliques, solve_unit, validate_schedule, Instance, Schedule, UnitMode,
};
use fsc::two_matching::{maximum_two_matching, MatchingDecomposition};
use fsc::verify::{self, Suite};

#[derive(Parser)]
#[command(name = "fsc", version, about = "Flow-shop scheduling with conflict graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate an instance file.
    Gen(GenArgs),
    /// Maximum 2-matching of the agreement graph.
    Matching {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Path cover of the agreement graph.
    Pathcover {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "B")]
        mode: Mode,
        #[arg(long)]
        json: bool,
    },
    /// Schedule a unit-job instance through a path cover.
    SolveUnit {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "B")]
        mode: Mode,
        /// Also draw a text Gantt chart.
        #[arg(long)]
        gantt: bool,
        #[arg(long)]
        json: bool,
    },
    /// Schedule an instance whose conflict graph is two disjoint cliques.
    SolveCliques {
        path: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Check the solvers against brute-force oracles.
    Verify {
        #[arg(long, value_enum)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Time the solvers on generated instances.
    Bench {
        #[arg(long, value_enum)]
        family: Family,
        /// Comma-separated job counts.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        repeat: usize,
        /// Conflict edge probability for `gnp`.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, value_enum, default_value = "B")]
        mode: Mode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(clap::Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: GenFamily,
    /// Number of jobs.
    #[arg(long)]
    n: Option<usize>,
    /// Conflict edge probability.
    #[arg(long)]
    p: Option<f64>,
    /// Number of chained triangles.
    #[arg(long)]
    k: Option<usize>,
    /// Size of the first clique.
    #[arg(long)]
    l: Option<usize>,
    /// Largest processing time.
    #[arg(long, default_value_t = 1)]
    p_max: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Source instance for `unit-from-graph`.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenFamily {
    Gnp,
    ChainedTriangles,
    TwoCliques,
    UnitFromGraph,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Gnp,
    ChainedTriangles,
    TwoCliques,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    #[value(name = "A")]
    A,
    #[value(name = "B")]
    B,
    #[value(name = "B-refined")]
    BRefined,
}

impl From<Mode> for UnitMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::A => UnitMode::A,
            Mode::B => UnitMode::B,
            Mode::BRefined => UnitMode::BRefined,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    SmallExhaustive,
    Random,
    Ratios,
}

/// Failure classes mapped to exit codes.
enum Failure {
    Usage(anyhow::Error),
    Verification(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(2)
        }
    }
}

fn load(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_instance(&text).with_context(|| format!("{}", path.display()))
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(value)?);
    Ok(())
}

fn checked(inst: &Instance, s: &Schedule) -> Result<(), Failure> {
    validate_schedule(inst, s).map_err(|v| Failure::Verification(format!("produced schedule is infeasible: {v}")))
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Gen(args) => gen(args)?,
        Command::Matching { path, json } => matching(&path, json)?,
        Command::Pathcover { path, mode, json } => pathcover(&path, mode, json)?,
        Command::SolveUnit { path, mode, gantt, json } => return solve_unit_cmd(&path, mode, gantt, json),
        Command::SolveCliques { path, json } => return solve_cliques_cmd(&path, json),
        Command::Verify { suite, seed } => return verify_cmd(suite, seed),
        Command::Bench {
            family,
            sizes,
            repeat,
            p,
            mode,
            seed,
            json,
        } => return bench(family, &sizes, repeat, p, mode, seed, json),
    }
    Ok(())
}

fn need<T>(value: Option<T>, flag: &str) -> Result<T> {
    value.ok_or_else(|| anyhow!("this family needs --{flag}"))
}

fn gen(a: GenArgs) -> Result<()> {
    let (inst, label) = match a.family {
        GenFamily::Gnp => {
            let (n, p) = (need(a.n, "n")?, need(a.p, "p")?);
            (generate::random_gnp(n, p, a.seed)?, format!("gnp n={n} p={p} seed={}", a.seed))
        }
        GenFamily::ChainedTriangles => {
            let k = need(a.k, "k")?;
            (generate::chained_triangles(k)?, format!("chained-triangles k={k}"))
        }
        GenFamily::TwoCliques => {
            let (l, n) = (need(a.l, "l")?, need(a.n, "n")?);
            (
                generate::two_cliques(l, n, a.p_max, a.seed)?,
                format!("two-cliques l={l} n={n} p_max={} seed={}", a.p_max, a.seed),
            )
        }
        GenFamily::UnitFromGraph => {
            let input = need(a.input, "input")?;
            let text = fs::read_to_string(&input).with_context(|| format!("cannot read {}", input.display()))?;
            (generate::unit_from_graph(&text)?, format!("unit jobs from {}", input.display()))
        }
    };
    let text = write_instance(&inst, &[label]);
    match a.out {
        Some(path) => fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

#[derive(Serialize)]
struct MatchingOut {
    size: usize,
    buckets: [usize; 7],
    decomposition: MatchingDecomposition,
}

fn matching(path: &Path, json: bool) -> Result<()> {
    let host = load(path)?.agreement();
    let m = maximum_two_matching(&host);
    let dec = m.decompose();
    if json {
        return print_json(&MatchingOut {
            size: m.len(),
            buckets: dec.bucket_sizes(),
            decomposition: dec,
        });
    }
    let [p0, p1, p2, p3, p4, p5, c] = dec.bucket_sizes();
    println!("size {}", m.len());
    println!("p0 {p0} p1 {p1} p2 {p2} p3 {p3} p4 {p4} p_ge5 {p5} cycles {c}");
    Ok(())
}

fn cover_for(host: &fsc::graph::Graph, mode: Mode) -> PathCover {
    match mode {
        Mode::A => algorithm_a(host),
        Mode::B => algorithm_b(host),
        Mode::BRefined => refine_to_min_singletons(host, algorithm_b_matching(host)),
    }
}

#[derive(Serialize)]
struct CoverOut<'a> {
    counts: CoverCounts,
    paths: &'a [Vec<usize>],
}

fn pathcover(path: &Path, mode: Mode, json: bool) -> Result<()> {
    let host = load(path)?.agreement();
    let cover = cover_for(&host, mode);
    let counts = cover.counts();
    if json {
        return print_json(&CoverOut {
            counts,
            paths: cover.paths(),
        });
    }
    print!("{}", cover_text(&cover));
    println!("paths {} zero_paths {} one_paths {}", counts.paths, counts.zero, counts.one);
    Ok(())
}

#[derive(Serialize)]
struct SolveOut<'a> {
    report: &'a RunReport,
    schedule: &'a Schedule,
    #[serde(skip_serializing_if = "Option::is_none")]
    paths: Option<&'a [Vec<usize>]>,
}

fn solve_unit_cmd(path: &Path, mode: Mode, show_gantt: bool, json: bool) -> Result<(), Failure> {
    let inst = load(path)?;
    if !inst.is_unit() {
        return Err(anyhow!("{} has non-unit jobs; solve-unit needs p1 = p2 = 1", path.display()).into());
    }
    let start = Instant::now();
    let sol = solve_unit(&inst, mode.into()).map_err(anyhow::Error::from)?;
    let ms = start.elapsed().as_secs_f64() * 1e3;
    checked(&inst, &sol.schedule)?;
    let report = RunReport::new(path.display().to_string(), format!("unit-{}", UnitMode::from(mode)), inst.n(), sol.schedule.makespan)
        .with_lower_bound(sol.lower_bound)
        .with_cover(sol.cover.counts())
        .with_wall_ms(ms);
    if json {
        print_json(&SolveOut {
            report: &report,
            schedule: &sol.schedule,
            paths: Some(sol.cover.paths()),
        })?;
        return Ok(());
    }
    print!("{}", schedule_text(&sol.schedule));
    if show_gantt {
        print!("{}", gantt(&inst, &sol.schedule).expect("unit instance"));
    }
    print!("{}", report.render(true));
    Ok(())
}

fn solve_cliques_cmd(path: &Path, json: bool) -> Result<(), Failure> {
    let inst = load(path)?;
    let part = recognize_two_cliques(&inst.conflicts)
        .ok_or_else(|| anyhow!("{}: conflict graph is not two disjoint cliques", path.display()))?;
    let start = Instant::now();
    let s = algorithm_c(&inst, &part).map_err(anyhow::Error::from)?;
    let lb = lower_bound_two_cliques(&inst, &part).map_err(anyhow::Error::from)?;
    let ms = start.elapsed().as_secs_f64() * 1e3;
    checked(&inst, &s)?;
    if let Some(t) = idle_gap(&inst, &s) {
        eprintln!("warning: both machines idle at time {t}");
    }
    let report = RunReport::new(path.display().to_string(), "two-cliques", inst.n(), s.makespan)
        .with_lower_bound(lb)
        .with_wall_ms(ms);
    if json {
        print_json(&SolveOut {
            report: &report,
            schedule: &s,
            paths: None,
        })?;
        return Ok(());
    }
    print!("{}", schedule_text(&s));
    if !inst.is_unit() {
        print!("{}", interval_text(&inst, &s));
    }
    print!("{}", report.render(true));
    Ok(())
}

fn verify_cmd(suite: SuiteArg, seed: u64) -> Result<(), Failure> {
    let suite = match suite {
        SuiteArg::SmallExhaustive => Suite::SmallExhaustive,
        SuiteArg::Random => Suite::Random,
        SuiteArg::Ratios => Suite::Ratios,
    };
    let r = verify::run(suite, seed);
    println!("suite {} checks {} failures {}", r.suite, r.checks, r.failures.len());
    for f in r.failures.iter().take(20) {
        println!("  {f}");
    }
    if r.passed() {
        Ok(())
    } else {
        Err(Failure::Verification(format!("{} of {} checks failed", r.failures.len(), r.checks)))
    }
}

fn bench_one(family: Family, n: usize, rep: usize, p: f64, mode: Mode, seed: u64) -> Result<RunReport, Failure> {
    let s = seed.wrapping_add(rep as u64);
    let (id, inst) = match family {
        Family::Gnp => (format!("gnp-n{n}-r{rep}"), generate::random_gnp(n, p, s).map_err(anyhow::Error::from)?),
        Family::ChainedTriangles => {
            let k = (n / 3).max(1);
            (format!("chained-k{k}-r{rep}"), generate::chained_triangles(k).map_err(anyhow::Error::from)?)
        }
        Family::TwoCliques => (
            format!("two-cliques-n{n}-r{rep}"),
            generate::two_cliques(n / 2, n, 100, s).map_err(anyhow::Error::from)?,
        ),
    };
    let start = Instant::now();
    let report = match family {
        Family::TwoCliques => {
            let part = recognize_two_cliques(&inst.conflicts).expect("generated as two cliques");
            let sched = algorithm_c(&inst, &part).map_err(anyhow::Error::from)?;
            let lb = lower_bound_two_cliques(&inst, &part).map_err(anyhow::Error::from)?;
            checked(&inst, &sched)?;
            RunReport::new(id, "two-cliques", inst.n(), sched.makespan).with_lower_bound(lb)
        }
        _ => {
            let sol = solve_unit(&inst, mode.into()).map_err(anyhow::Error::from)?;
            checked(&inst, &sol.schedule)?;
            RunReport::new(id, format!("unit-{}", UnitMode::from(mode)), inst.n(), sol.schedule.makespan)
                .with_lower_bound(sol.lower_bound)
                .with_cover(sol.cover.counts())
        }
    };
    Ok(report.with_wall_ms(start.elapsed().as_secs_f64() * 1e3))
}

fn bench(family: Family, sizes: &[usize], repeat: usize, p: f64, mode: Mode, seed: u64, json: bool) -> Result<(), Failure> {
    if repeat == 0 {
        return Err(anyhow!("--repeat must be at least 1").into());
    }
    let jobs: Vec<(usize, usize)> = sizes.iter().flat_map(|&n| (0..repeat).map(move |r| (n, r))).collect();
    let mut reports = jobs
        .par_iter()
        .map(|&(n, r)| bench_one(family, n, r, p, mode, seed))
        .collect::<Result<Vec<_>, _>>()?;
    reports.sort_by(|a, b| (a.n, &a.instance).cmp(&(b.n, &b.instance)));
    if json {
        print_json(&reports)?;
        return Ok(());
    }
    for r in &reports {
        let ratio = r.ratio.map_or("-".to_string(), |x| format!("{x:.4}"));
        println!(
            "{} {} n={} makespan={} lower_bound={} ratio={ratio} wall_ms={:.3}",
            r.instance,
            r.algorithm,
            r.n,
            r.makespan,
            r.lower_bound.map_or("-".to_string(), |b| b.to_string()),
            r.wall_ms
        );
    }
    Ok(())
}
