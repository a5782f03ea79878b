use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use symnorm::harness::{self, run_suite, search_violation, SearchConfig, SearchTarget, TrialConfig, SUITES};
use symnorm::theorems::{repro_counterexample, verify_fixture, FixtureCase};
use symnorm::{Error, Result};

#[derive(Parser)]
#[command(name = "symnorm", version, about = "Check matrix subadditivity inequalities on random instances")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a randomized suite.
    Check {
        #[arg(long)]
        theorem: String,
        /// Inclusive range `a..b` or a comma separated list.
        #[arg(long, default_value = "2..8")]
        dims: String,
        #[arg(long, default_value_t = 500)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Function literal (`power:0.5`, `mincap:1`, `sqrt`, ...) or `random`.
        #[arg(long = "fn", default_value = "random")]
        function: String,
        /// A single norm (`kyfan:2`, `schatten:3`, `trace`, `operator`) or `all`.
        #[arg(long, default_value = "all")]
        norm: String,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Reproduce one of the constructed counterexamples.
    Repro {
        #[arg(long)]
        case: String,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Search for a violation after dropping a hypothesis.
    Search {
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value = "2..4")]
        dims: String,
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// List the registered suites.
    List,
}

fn parse_dims(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::Usage(format!("cannot parse dimensions `{s}`; use `a..b` or `a,b,c`"));
    if let Some((a, b)) = s.split_once("..") {
        let a: usize = a.trim().parse().map_err(|_| bad())?;
        let b: usize = b.trim().parse().map_err(|_| bad())?;
        if a > b {
            return Err(bad());
        }
        return Ok((a..=b).collect());
    }
    s.split(',').map(|p| p.trim().parse().map_err(|_| bad())).collect()
}

fn write_report<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut json = serde_json::to_string_pretty(value).map_err(|e| Error::Malformed(e.to_string()))?;
    json.push('\n');
    std::fs::write(path, json).map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display())))
}

fn check(config: TrialConfig, report: Option<PathBuf>) -> Result<bool> {
    let r = run_suite(&config)?;
    println!("{}  seed {}  tol {:e}  fn {}  norm {}", config.theorem_id, config.seed, config.tol, config.function_spec, config.norm_scope);
    println!("{:>5} {:>8} {:>8} {:>8}", "dim", "passed", "failed", "skipped");
    for d in &r.per_dim {
        println!("{:>5} {:>8} {:>8} {:>8}", d.dim, d.totals.passed, d.totals.failed, d.totals.skipped);
    }
    println!("{:>5} {:>8} {:>8} {:>8}", "all", r.totals.passed, r.totals.failed, r.totals.skipped);
    for f in r.failures.iter().take(5) {
        match (&f.error, &f.result) {
            (Some(e), _) => println!("failure dim {} trial {}: {e}", f.dim, f.trial),
            (None, Some(res)) => println!(
                "failure dim {} trial {}: worst k {:?}, min margin {:.6e}",
                f.dim,
                f.trial,
                res.strict_violation_at,
                res.min_margin()
            ),
            _ => {}
        }
    }
    println!("wall time {:.3}s", r.wall_time);
    if let Some(p) = report {
        write_report(&p, &r)?;
    }
    Ok(r.all_passed())
}

fn repro(case: &str, report: Option<PathBuf>) -> Result<bool> {
    let case: FixtureCase = case.parse()?;
    let r = repro_counterexample(case);
    println!("{case}");
    println!("{:>3} {:>18} {:>18} {:>18}  claim", "k", "lhs", "rhs", "margin");
    for row in &r.per_k {
        println!(
            "{:>3} {:>18.12} {:>18.12} {:>18.12}  {}",
            row.k,
            row.lhs,
            row.rhs,
            row.margin,
            row.claim.as_deref().unwrap_or("-")
        );
    }
    let verdict = verify_fixture(case, &r);
    match &verdict {
        Ok(()) => println!("reproduced"),
        Err(msg) => println!("NOT reproduced: {msg}"),
    }
    if let Some(p) = report {
        write_report(&p, &r)?;
    }
    Ok(verdict.is_ok())
}

fn search(target: &str, budget: usize, seed: u64, dims: &str, report: Option<PathBuf>) -> Result<bool> {
    let target: SearchTarget = target.parse()?;
    let mut config = SearchConfig::new(target, seed);
    config.budget = budget;
    config.dims = parse_dims(dims)?;
    let r = search_violation(&config)?;
    match &r.witness {
        Some(w) => {
            let row = w.result.per_k.iter().min_by(|a, b| a.margin.total_cmp(&b.margin)).expect("rows");
            println!(
                "{target}: witness at trial {} (dim {}, seed {}, stream {}) after {} trials",
                w.trial, w.dim, w.seed, w.stream, r.trials_run
            );
            println!("  k {}: lhs {:.12} rhs {:.12} margin {:.6e}", row.k, row.lhs, row.rhs, row.margin);
        }
        None => println!("{target}: no violation in {} trials", r.trials_run),
    }
    println!("wall time {:.3}s", r.wall_time);
    if let Some(p) = report {
        write_report(&p, &r)?;
    }
    Ok(r.as_expected())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Check { theorem, dims, trials, seed, tol, function, norm, report } => {
            harness::lookup(&theorem)?;
            let mut config = TrialConfig::new(&theorem, parse_dims(&dims)?, trials, seed);
            config.tol = tol;
            config.function_spec = function;
            config.norm_scope = norm;
            config.validate().map_err(|e| Error::Usage(e.to_string()))?;
            check(config, report)
        }
        Command::Repro { case, report } => repro(&case, report),
        Command::Search { target, budget, seed, dims, report } => search(&target, budget, seed, &dims, report),
        Command::List => {
            let width = SUITES.iter().map(|s| s.id.len()).max().unwrap_or(0);
            for s in SUITES {
                println!("{:<width$}  {}", s.id, s.summary);
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e @ (Error::Usage(_) | Error::InvalidArgument(_) | Error::Parse(_) | Error::DimensionTooLarge { .. })) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
