//! Randomized suites, hypothesis-dropping searches and their JSON reports.
//!
//! A trial is identified by `(seed, dim, trial)`; its RNG is
//! [`gen::trial_rng`]`(seed, stream)` with `stream = dim << 32 | trial`, so
//! any trial can be replayed without running the others and the report does
//! not depend on how trials are scheduled across threads.

pub mod gen;
mod search;
mod suites;

use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::concave::ConcaveFn;
use crate::error::{Error, Result};
use crate::matcore::MAX_DIM;
use crate::norms::SymmetricNorm;
use crate::theorems::CheckResult;

pub use search::{search_violation, SearchConfig, SearchReport, SearchTarget, Witness, SEARCH_GAP};
pub use suites::{Suite, SUITES};

#[derive(Debug, Clone, PartialEq)]
pub enum FunctionSpec {
    Random,
    Fixed(ConcaveFn),
}

impl FromStr for FunctionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "random" {
            Ok(FunctionSpec::Random)
        } else {
            Ok(FunctionSpec::Fixed(s.parse()?))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub theorem_id: String,
    pub dims: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    pub tol: f64,
    /// `"random"` or a function literal such as `power:0.5`.
    pub function_spec: String,
    /// `"all"` (every Ky Fan norm) or a single norm such as `schatten:3`.
    pub norm_scope: String,
}

impl TrialConfig {
    pub fn new(theorem_id: &str, dims: Vec<usize>, trials: usize, seed: u64) -> Self {
        TrialConfig {
            theorem_id: theorem_id.to_owned(),
            dims,
            trials,
            seed,
            tol: 1e-9,
            function_spec: "random".into(),
            norm_scope: "all".into(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidArgument("trials must be at least 1".into()));
        }
        if self.dims.is_empty() {
            return Err(Error::InvalidArgument("no dimensions given".into()));
        }
        if let Some(&d) = self.dims.iter().find(|&&d| d == 0 || d > MAX_DIM) {
            return Err(Error::DimensionTooLarge { dim: d, max: MAX_DIM });
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidArgument(format!("tolerance must be positive, got {}", self.tol)));
        }
        self.function()?;
        if let Some(norm) = self.norm()? {
            let smallest = *self.dims.iter().min().expect("non-empty");
            norm.validate(smallest)?;
        }
        Ok(())
    }

    pub fn function(&self) -> Result<FunctionSpec> {
        self.function_spec.parse()
    }

    pub fn norm(&self) -> Result<Option<SymmetricNorm>> {
        if self.norm_scope == "all" {
            Ok(None)
        } else {
            self.norm_scope.parse().map(Some)
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

impl Totals {
    fn add(&mut self, other: Totals) {
        self.passed += other.passed;
        self.failed += other.failed;
        self.skipped += other.skipped;
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimTotals {
    pub dim: usize,
    #[serde(flatten)]
    pub totals: Totals,
}

/// A failing trial with what is needed to run it again on its own.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub dim: usize,
    pub trial: usize,
    pub seed: u64,
    pub stream: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<CheckResult>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub config: TrialConfig,
    pub totals: Totals,
    pub per_dim: Vec<DimTotals>,
    pub failures: Vec<Failure>,
    pub wall_time: f64,
}

impl CheckReport {
    pub fn all_passed(&self) -> bool {
        self.totals.failed == 0
    }

    /// The report as JSON with `wall_time` zeroed, for comparing runs.
    pub fn canonical_json(&self) -> String {
        let mut r = self.clone();
        r.wall_time = 0.0;
        serde_json::to_string_pretty(&r).expect("report serializes")
    }
}

pub fn stream_id(dim: usize, trial: usize) -> u64 {
    ((dim as u64) << 32) | trial as u64
}

pub fn lookup(id: &str) -> Result<&'static Suite> {
    suites::find(id).ok_or_else(|| {
        let ids: Vec<&str> = SUITES.iter().map(|s| s.id).collect();
        Error::Usage(format!("unknown theorem id `{id}`; registered ids: {}", ids.join(", ")))
    })
}

enum Outcome {
    Passed,
    Skipped,
    Failed(Failure),
}

fn run_one(
    suite: &Suite,
    config: &TrialConfig,
    function: &FunctionSpec,
    norm: Option<SymmetricNorm>,
    dim: usize,
    trial: usize,
) -> Outcome {
    let stream = stream_id(dim, trial);
    let fail = |error: Option<String>, result: Option<CheckResult>| {
        Outcome::Failed(Failure { dim, trial, seed: config.seed, stream, error, result })
    };
    let mut rng = gen::trial_rng(config.seed, stream);
    let result = (suite.run)(&mut rng, dim, function, config.tol).and_then(|r| match norm {
        Some(nu) if !r.is_skipped() => r.restrict_to(nu),
        _ => Ok(r),
    });
    match result {
        Err(e) => fail(Some(e.to_string()), None),
        Ok(r) if r.is_skipped() => Outcome::Skipped,
        Ok(r) if r.holds => Outcome::Passed,
        Ok(r) => {
            let r = r.with_meta("seed", config.seed).with_meta("stream", stream);
            fail(None, Some(r))
        }
    }
}

/// Runs `config.trials` trials of the registered suite in every dimension.
pub fn run_suite(config: &TrialConfig) -> Result<CheckReport> {
    let start = Instant::now();
    let suite = lookup(&config.theorem_id)?;
    config.validate()?;
    let function = config.function()?;
    let norm = config.norm()?;

    let jobs: Vec<(usize, usize)> =
        config.dims.iter().flat_map(|&d| (0..config.trials).map(move |t| (d, t))).collect();
    let outcomes: Vec<(usize, Outcome)> = jobs
        .par_iter()
        .map(|&(d, t)| (d, run_one(suite, config, &function, norm, d, t)))
        .collect();

    let mut per_dim: Vec<DimTotals> = Vec::new();
    let mut failures = Vec::new();
    for (d, outcome) in outcomes {
        let mut t = Totals::default();
        match outcome {
            Outcome::Passed => t.passed = 1,
            Outcome::Skipped => t.skipped = 1,
            Outcome::Failed(f) => {
                t.failed = 1;
                failures.push(f);
            }
        }
        match per_dim.iter_mut().find(|e| e.dim == d) {
            Some(e) => e.totals.add(t),
            None => per_dim.push(DimTotals { dim: d, totals: t }),
        }
    }
    failures.sort_by_key(|f| (f.dim, f.trial));
    let mut totals = Totals::default();
    for e in &per_dim {
        totals.add(e.totals);
    }
    Ok(CheckReport { config: config.clone(), totals, per_dim, failures, wall_time: start.elapsed().as_secs_f64() })
}

/// Re-runs a single trial of a suite.
pub fn replay_trial(config: &TrialConfig, dim: usize, trial: usize) -> Result<CheckResult> {
    let suite = lookup(&config.theorem_id)?;
    let mut rng = gen::trial_rng(config.seed, stream_id(dim, trial));
    let r = (suite.run)(&mut rng, dim, &config.function()?, config.tol)?;
    match config.norm()? {
        Some(nu) if !r.is_skipped() => r.restrict_to(nu),
        _ => Ok(r),
    }
}
