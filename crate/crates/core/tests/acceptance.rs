//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::f64::consts::SQRT_2;
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use symnorm::harness::{run_suite, search_violation, SearchConfig, SearchTarget, TrialConfig, SUITES};
use symnorm::theorems::{concavity_converse_witness, repro_counterexample, verify_fixture, FixtureCase};
use symnorm::CheckResult;

type Outcome = Result<String, String>;

fn row(r: &CheckResult, k: usize, claim: Option<&str>) -> Result<(f64, f64, f64), String> {
    r.row(k, claim).map(|x| (x.lhs, x.rhs, x.margin)).ok_or_else(|| format!("no row k={k} {claim:?}"))
}

fn close(got: f64, want: f64, tol: f64, what: &str) -> Result<(), String> {
    if (got - want).abs() <= tol {
        Ok(())
    } else {
        Err(format!("{what}: got {got:.15}, want {want:.15}"))
    }
}

fn difference_cap() -> Outcome {
    repro_counterexample(FixtureCase::DifferenceCap);
    let start = Instant::now();
    let r = repro_counterexample(FixtureCase::DifferenceCap);
    let elapsed = start.elapsed();
    verify_fixture(FixtureCase::DifferenceCap, &r)?;
    let (l2, r2, _) = row(&r, 2, None)?;
    close(l2, SQRT_2, 1e-9, "Ky Fan 2 of f(|A-B|)")?;
    close(r2, 1.0, 1e-9, "Ky Fan 2 of f(|A|+|B|)")?;
    let (_, _, m1) = row(&r, 1, None)?;
    if m1 < -1e-9 {
        return Err(format!("k=1 violated with margin {m1}"));
    }
    if elapsed >= Duration::from_millis(1) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("k=2: {l2:.12} vs {r2:.12}, k=1 margin {m1:.3e}, {elapsed:?}"))
}

fn shift_cap() -> Outcome {
    let r = repro_counterexample(FixtureCase::ShiftCap);
    verify_fixture(FixtureCase::ShiftCap, &r)?;
    let (l, rr, _) = row(&r, 2, None)?;
    close(l, 2.0 * SQRT_2, 1e-9, "lhs")?;
    close(rr, 1.0 + SQRT_2, 1e-9, "rhs")?;
    if l - rr <= 0.41 {
        return Err(format!("gap {} too small", l - rr));
    }
    Ok(format!("k=2: {l:.12} vs {rr:.12}, gap {:.6}", l - rr))
}

fn interlace() -> Outcome {
    let r = repro_counterexample(FixtureCase::Interlace);
    verify_fixture(FixtureCase::Interlace, &r)?;
    let mut gaps = Vec::new();
    for k in 1..=3 {
        let (l, rr, _) = row(&r, k, Some("chain"))?;
        if rr - l <= 1e-6 {
            return Err(format!("link {k}: {l} < {rr} fails by the required gap"));
        }
        gaps.push(format!("{:.6}", rr - l));
    }
    Ok(format!("chain gaps {}", gaps.join(", ")))
}

fn property_suites() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut trials = 0;
    for s in SUITES {
        let mut c = TrialConfig::new(s.id, (2..=8).collect(), 500, 42);
        c.tol = 1e-8;
        let r = run_suite(&c).map_err(|e| format!("{}: {e}", s.id))?;
        trials += r.totals.passed + r.totals.failed + r.totals.skipped;
        if r.totals.failed > 0 {
            bad.push(format!("{}: {} failures", s.id, r.totals.failed));
        }
    }
    let elapsed = start.elapsed();
    if !bad.is_empty() {
        return Err(bad.join("; "));
    }
    if elapsed >= Duration::from_secs(300) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!("{} suites, {trials} trials, 0 violations, {:.1}s", SUITES.len(), elapsed.as_secs_f64()))
}

fn convex_converse() -> Outcome {
    let (l, r) = concavity_converse_witness(&|t: f64| t * t, 1.0, 3.0).map_err(|e| e.to_string())?;
    close(l, 10.0, 1e-12, "Tr f(A+B)")?;
    close(r, 8.0, 1e-12, "Tr f(A) + Tr f(B)")?;
    Ok(format!("({l}, {r})"))
}

fn rotfeld() -> Outcome {
    let mut c = TrialConfig::new("rotfeld", (2..=8).collect(), 500, 42);
    c.tol = 1e-8;
    let r = run_suite(&c).map_err(|e| e.to_string())?;
    if !r.all_passed() {
        return Err(format!("{} failures", r.totals.failed));
    }
    Ok(format!("{} trials passed", r.totals.passed))
}

fn searches() -> Outcome {
    let mut parts = Vec::new();
    for target in [SearchTarget::DropNormalityConvexReverse, SearchTarget::IntermediateAbsSum, SearchTarget::Control] {
        let mut c = SearchConfig::new(target, 7);
        c.budget = 10_000;
        c.dims = vec![2, 3, 4];
        let r = search_violation(&c).map_err(|e| e.to_string())?;
        if !r.as_expected() {
            return Err(format!("{target}: witness {:?}", r.witness.map(|w| w.trial)));
        }
        parts.push(match &r.witness {
            Some(w) => format!("{target} witness at trial {}", w.trial),
            None => format!("{target} none in {}", r.trials_run),
        });
    }
    Ok(parts.join(", "))
}

fn strip_wall_time(path: &PathBuf) -> Result<String, String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let mut v: serde_json::Value = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    v.as_object_mut().ok_or("report is not an object")?.remove("wall_time");
    Ok(v.to_string())
}

fn determinism() -> Outcome {
    let c = TrialConfig::new("expansive-congruence", vec![2, 5, 8], 60, 9);
    let a = run_suite(&c).map_err(|e| e.to_string())?.canonical_json();
    let b = run_suite(&c).map_err(|e| e.to_string())?.canonical_json();
    if a != b {
        return Err("library reports differ".into());
    }
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let mut texts = Vec::new();
    for i in 0..2 {
        let path = dir.join(format!("determinism-{i}.json"));
        let status = Command::new(env!("CARGO_BIN_EXE_symnorm"))
            .args(["check", "--theorem", "block-normal", "--dims", "2..5", "--trials", "40", "--seed", "3"])
            .arg("--report")
            .arg(&path)
            .output()
            .map_err(|e| e.to_string())?
            .status;
        if !status.success() {
            return Err(format!("check exited with {status}"));
        }
        texts.push(strip_wall_time(&path)?);
    }
    if texts[0] != texts[1] {
        return Err("CLI reports differ".into());
    }
    Ok("library and CLI reports identical apart from wall_time".into())
}

fn identities() -> Outcome {
    let mut parts = Vec::new();
    for id in ["abs-split-identity", "shift-identity"] {
        let mut c = TrialConfig::new(id, (2..=6).collect(), 200, 42);
        c.tol = 1e-10;
        let r = run_suite(&c).map_err(|e| e.to_string())?;
        if !r.all_passed() || r.totals.passed != 1000 {
            return Err(format!("{id}: {:?}", r.totals));
        }
        parts.push(format!("{id} 1000/1000"));
    }
    Ok(parts.join(", "))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("capped difference counterexample", difference_cap),
        ("shift counterexample", shift_cap),
        ("interlacing chain", interlace),
        ("property suites at 1e-8", property_suites),
        ("convex function breaks the trace inequality", convex_converse),
        ("trace inequality with affine part", rotfeld),
        ("hypothesis-dropping searches", searches),
        ("deterministic reports", determinism),
        ("shift and pos/neg split identities at 1e-10", identities),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
