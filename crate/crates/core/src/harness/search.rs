//! Randomized searches for counterexamples once a hypothesis is dropped.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::gen::{gen_concave, gen_expansive, gen_normal, gen_psd, trial_rng};
use crate::concave::{is_e_convex, log_grid, random_concave, ConcaveFn};
use crate::error::{Error, Result};
use crate::theorems::{self, concavity_converse_witness, CheckResult};

/// A witness must beat its inequality by more than this absolute margin.
pub const SEARCH_GAP: f64 = 1e-6;

const CHUNK: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchTarget {
    /// The trace inequality on the two-point construction with `f(t) = t²`.
    DropConcavity,
    /// The convex reverse inequality with normal instead of PSD operands.
    DropNormalityConvexReverse,
    /// `‖f(|A−B|)‖ ≤ ‖f(|A|+|B|)‖` for PSD pairs and general concave `f`.
    IntermediateAbsSum,
    /// `‖f(|A+B|)‖ ≤ ‖f(|A|+|B|)‖` for normal pairs and concave `f` that is
    /// not e-convex.
    DropEConvexityIntermediate,
    /// Subadditivity with all hypotheses in place; should find nothing.
    Control,
}

impl SearchTarget {
    pub const ALL: [SearchTarget; 5] = [
        SearchTarget::DropConcavity,
        SearchTarget::DropNormalityConvexReverse,
        SearchTarget::IntermediateAbsSum,
        SearchTarget::DropEConvexityIntermediate,
        SearchTarget::Control,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            SearchTarget::DropConcavity => "drop_concavity",
            SearchTarget::DropNormalityConvexReverse => "drop_normality_convex_reverse",
            SearchTarget::IntermediateAbsSum => "intermediate_abs_sum",
            SearchTarget::DropEConvexityIntermediate => "drop_e_convexity_intermediate",
            SearchTarget::Control => "control",
        }
    }

    /// Whether a witness is expected to exist.
    pub fn expects_witness(&self) -> bool {
        *self != SearchTarget::Control
    }
}

impl fmt::Display for SearchTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SearchTarget {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SearchTarget::ALL.into_iter().find(|t| t.as_str() == s).ok_or_else(|| {
            let names: Vec<&str> = SearchTarget::ALL.iter().map(SearchTarget::as_str).collect();
            Error::Usage(format!("unknown search target `{s}`; expected one of {}", names.join(", ")))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub target: SearchTarget,
    pub budget: usize,
    pub seed: u64,
    pub dims: Vec<usize>,
    pub tol: f64,
}

impl SearchConfig {
    pub fn new(target: SearchTarget, seed: u64) -> Self {
        SearchConfig { target, budget: 10_000, seed, dims: vec![2, 3, 4], tol: 1e-9 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub trial: usize,
    pub dim: usize,
    pub seed: u64,
    pub stream: u64,
    pub result: CheckResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub config: SearchConfig,
    pub trials_run: usize,
    pub witness: Option<Witness>,
    pub wall_time: f64,
}

impl SearchReport {
    /// A witness was found exactly when one was expected.
    pub fn as_expected(&self) -> bool {
        self.witness.is_some() == self.config.target.expects_witness()
    }
}

/// The `i`-th pair `(s, t)` with `s < t` positive integers of equal parity,
/// in order of increasing `t`: `(1,3), (2,4), (3,5), (1,5), …`.
fn same_parity_pair(i: usize) -> (f64, f64) {
    let mut left = i;
    let mut t = 3;
    loop {
        let count = (t - 1) / 2;
        if left < count {
            let s = t - 2 * (left + 1);
            return (s as f64, t as f64);
        }
        left -= count;
        t += 1;
    }
}

fn drop_concavity(i: usize) -> Result<CheckResult> {
    let (s, t) = same_parity_pair(i);
    let (lhs, rhs) = concavity_converse_witness(&|x: f64| x * x, s, t)?;
    let mut out = CheckResult::new("concavity_converse", 2, 0.0);
    out.push_row(2, lhs, rhs, Some("trace"));
    Ok(out.finish().with_meta("f", "t^2").with_meta("s", s).with_meta("t", t))
}

fn exponent(rng: &mut ChaCha8Rng) -> f64 {
    [1.5, 2.0, 3.0][rng.random_range(0..3)]
}

fn not_e_convex(rng: &mut ChaCha8Rng) -> Result<ConcaveFn> {
    let grid = log_grid(-8.0, 4.0);
    loop {
        let f = if rng.random_bool(0.5) {
            ConcaveFn::MinCap { c: rng.random_range(0.1..2.0) }
        } else {
            random_concave(rng, 3, 3.0)
        };
        if !is_e_convex(&f, &grid, 1e-9)? {
            return Ok(f);
        }
    }
}

fn trial(target: SearchTarget, rng: &mut ChaCha8Rng, i: usize, n: usize, tol: f64) -> Result<CheckResult> {
    match target {
        SearchTarget::DropConcavity => drop_concavity(i),
        SearchTarget::DropNormalityConvexReverse => {
            let ops: Vec<_> = (0..2)
                .map(|_| {
                    let real = rng.random_bool(0.5);
                    gen_normal(rng, n, 2.0, real)
                })
                .collect();
            let zs = vec![gen_expansive(rng, n, 0.3), gen_expansive(rng, n, 0.3)];
            theorems::check_convex_reverse_normal(&ops, &zs, exponent(rng), tol)
        }
        SearchTarget::IntermediateAbsSum => {
            let f = gen_concave(rng, 2.0);
            let a = gen_psd(rng, n, 2.0);
            let b = gen_psd(rng, n, 2.0).scale(-1.0);
            Ok(theorems::check_intermediate(&f, &a, &b, tol)?.named("intermediate_abs_sum"))
        }
        SearchTarget::DropEConvexityIntermediate => {
            let f = not_e_convex(rng)?;
            let a = gen_normal(rng, n, 2.0, false);
            let b = gen_normal(rng, n, 2.0, false);
            theorems::check_intermediate(&f, &a, &b, tol)
        }
        SearchTarget::Control => {
            let f = gen_concave(rng, 3.0);
            let ops = vec![gen_normal(rng, n, 2.0, false), gen_normal(rng, n, 2.0, false)];
            Ok(theorems::check_subadditivity(&f, &ops, tol)?.named("control"))
        }
    }
}

/// Replays trial `i` of a search.
pub fn search_trial(config: &SearchConfig, i: usize) -> Result<(usize, CheckResult)> {
    if config.dims.is_empty() {
        return Err(Error::InvalidArgument("no dimensions given".into()));
    }
    let n = config.dims[i % config.dims.len()];
    let mut rng = trial_rng(config.seed, i as u64);
    Ok((n, trial(config.target, &mut rng, i, n, config.tol)?))
}

/// Runs trials in index order until one shows a violation larger than
/// [`SEARCH_GAP`], or the budget is spent. Trials run in parallel chunks and
/// the lowest violating index wins, so the outcome does not depend on the
/// thread count.
pub fn search_violation(config: &SearchConfig) -> Result<SearchReport> {
    let start = Instant::now();
    if config.budget == 0 {
        return Err(Error::InvalidArgument("budget must be at least 1".into()));
    }
    let mut done = 0;
    while done < config.budget {
        let end = (done + CHUNK).min(config.budget);
        let hits = (done..end)
            .into_par_iter()
            .map(|i| search_trial(config, i).map(|(n, r)| (i, n, r)))
            .collect::<Result<Vec<_>>>()?;
        if let Some((i, n, r)) = hits.into_iter().find(|(_, _, r)| r.has_strict_violation(SEARCH_GAP)) {
            let stream = i as u64;
            let result = r.with_meta("seed", config.seed).with_meta("stream", stream);
            return Ok(SearchReport {
                config: config.clone(),
                trials_run: i + 1,
                witness: Some(Witness { trial: i, dim: n, seed: config.seed, stream, result }),
                wall_time: start.elapsed().as_secs_f64(),
            });
        }
        done = end;
    }
    Ok(SearchReport { config: config.clone(), trials_run: done, witness: None, wall_time: start.elapsed().as_secs_f64() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parity_pairs() {
        let first: Vec<_> = (0..5).map(same_parity_pair).collect();
        assert_eq!(first, vec![(1.0, 3.0), (2.0, 4.0), (3.0, 5.0), (1.0, 5.0), (4.0, 6.0)]);
    }

    #[test]
    fn convex_square_fails_at_first_pair() {
        let r = search_violation(&SearchConfig::new(SearchTarget::DropConcavity, 0)).unwrap();
        let w = r.witness.unwrap();
        assert_eq!(w.trial, 0);
        assert_eq!(w.result.metadata["s"], "1");
        assert_eq!(w.result.metadata["t"], "3");
        assert!((w.result.per_k[0].lhs - 10.0).abs() < 1e-12 && (w.result.per_k[0].rhs - 8.0).abs() < 1e-12);
    }

    #[test]
    fn targets_parse() {
        for t in SearchTarget::ALL {
            assert_eq!(t.as_str().parse::<SearchTarget>().unwrap(), t);
        }
        assert!(matches!("drop_everything".parse::<SearchTarget>(), Err(Error::Usage(_))));
    }

    #[test]
    fn witness_replays() {
        let c = SearchConfig::new(SearchTarget::IntermediateAbsSum, 3);
        let r = search_violation(&c).unwrap();
        let w = r.witness.expect("witness");
        let (n, again) = search_trial(&c, w.trial).unwrap();
        assert_eq!(n, w.dim);
        assert_eq!(again.per_k, w.result.per_k);
    }
}
