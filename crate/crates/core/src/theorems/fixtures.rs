use std::f64::consts::{FRAC_1_SQRT_2, SQRT_2};
use std::fmt;
use std::str::FromStr;

use super::{sv, CheckResult};
use crate::concave::{ConcaveFn, RealFn};
use crate::error::{Error, Result};
use crate::matcore::{apply_fn_abs, ComplexMatrix};

/// Absolute gap a constructed counterexample must clear to count as strict.
pub const STRICT_GAP: f64 = 1e-6;

const FIXTURE_TOL: f64 = 1e-9;

/// Builds `A = ½[[s, √(st)], [√(st), t]]` and `B = ½[[s, −√(st)], [−√(st), t]]`
/// (so `A + B = diag(s, t)`) and returns `(Tr f(A+B), Tr f(A) + Tr f(B))`.
///
/// With `f(0) = 0` these are `f(s) + f(t)` and `2f((s+t)/2)`, so the trace
/// inequality on this pair is midpoint concavity of `f` at `(s, t)`.
pub fn concavity_converse_witness<F: RealFn + ?Sized>(f: &F, s: f64, t: f64) -> Result<(f64, f64)> {
    if !(s > 0.0 && t > 0.0 && s.is_finite() && t.is_finite()) {
        return Err(Error::InvalidArgument(format!("s and t must be positive, got ({s}, {t})")));
    }
    let f0 = f.call(0.0)?;
    if f0.abs() > 1e-12 {
        return Err(Error::Precondition(format!("f(0) must be 0, got {f0}")));
    }
    let r = (s * t).sqrt();
    let a = ComplexMatrix::from_real_rows(&[&[s / 2.0, r / 2.0], &[r / 2.0, t / 2.0]])?;
    let b = ComplexMatrix::from_real_rows(&[&[s / 2.0, -r / 2.0], &[-r / 2.0, t / 2.0]])?;
    let lhs = apply_fn_abs(f, &(&a + &b))?.trace().re;
    let rhs = apply_fn_abs(f, &a)?.trace().re + apply_fn_abs(f, &b)?.trace().re;
    Ok((lhs, rhs))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FixtureCase {
    /// Two 2×2 PSD matrices with `‖f(|A−B|)‖ > ‖f(|A|+|B|)‖` in the Ky Fan
    /// 2-norm for a capped identity.
    DifferenceCap,
    /// The 3×3 shift `Z` with `‖f(|Z+Z*|)‖ > ‖f(|Z|+|Z*|)‖`.
    ShiftCap,
    /// `Z = A + iB` from the `DifferenceCap` pair, where the spectrum of `|Z|` sits
    /// strictly inside that of `|A|+|B|`.
    Interlace,
}

impl FixtureCase {
    pub const ALL: [FixtureCase; 3] = [FixtureCase::DifferenceCap, FixtureCase::ShiftCap, FixtureCase::Interlace];

    pub fn as_str(&self) -> &'static str {
        match self {
            FixtureCase::DifferenceCap => "difference-cap",
            FixtureCase::ShiftCap => "shift-cap",
            FixtureCase::Interlace => "interlace",
        }
    }
}

impl fmt::Display for FixtureCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FixtureCase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "difference-cap" => Ok(FixtureCase::DifferenceCap),
            "shift-cap" => Ok(FixtureCase::ShiftCap),
            "interlace" => Ok(FixtureCase::Interlace),
            _ => Err(Error::Usage(format!("unknown case `{s}`; expected difference-cap, shift-cap or interlace"))),
        }
    }
}

fn projection_pair() -> (ComplexMatrix, ComplexMatrix) {
    let a = ComplexMatrix::diag_real(&[1.0, 0.0]);
    let b = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).expect("literal");
    (a, b)
}

fn abs_sum(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    Ok(&apply_fn_abs(&|t: f64| t, a)? + &apply_fn_abs(&|t: f64| t, b)?)
}

fn difference_cap() -> Result<CheckResult> {
    let (a, b) = projection_pair();
    let f = ConcaveFn::min_cap(FRAC_1_SQRT_2)?;
    let lhs = apply_fn_abs(&f, &(&a - &b))?;
    let rhs = apply_fn_abs(&f, &abs_sum(&a, &b)?)?;
    Ok(CheckResult::ky_fan("difference-cap", &sv(&lhs), &sv(&rhs), FIXTURE_TOL).with_meta("f", &f))
}

fn shift_cap() -> Result<CheckResult> {
    let z = ComplexMatrix::shift(3);
    let f = ConcaveFn::min_cap(SQRT_2)?;
    let lhs = apply_fn_abs(&f, &(&z + &z.adjoint()))?;
    let rhs = apply_fn_abs(&f, &abs_sum(&z, &z.adjoint())?)?;
    Ok(CheckResult::ky_fan("shift-cap", &sv(&lhs), &sv(&rhs), FIXTURE_TOL).with_meta("f", &f))
}

/// Rows `k = 1, 2, 3` (claim `chain`) are the consecutive links of
/// `λ₂(|A|+|B|) < λ₂(|Z|) < λ₁(|Z|) < λ₁(|A|+|B|)`, each as `lhs < rhs`.
/// The rows with claim `capped` compare `f(|Z|)` with `f(|A|+|B|)` for
/// `f = min{t, λ₂(|Z|)}` and exhibit the resulting Ky Fan 2 violation.
fn interlace() -> Result<CheckResult> {
    let (a, b) = projection_pair();
    let z = &a + &b.scale_complex(crate::matcore::c(0.0, 1.0));
    let sz = sv(&z);
    let s_ab = sv(&abs_sum(&a, &b)?);
    let mut out = CheckResult::new("interlace", 2, FIXTURE_TOL);
    out.push_row(1, s_ab[1], sz[1], Some("chain"));
    out.push_row(2, sz[1], sz[0], Some("chain"));
    out.push_row(3, sz[0], s_ab[0], Some("chain"));
    let f = ConcaveFn::min_cap(sz[1])?;
    let lhs = apply_fn_abs(&f, &z)?;
    let rhs = apply_fn_abs(&f, &abs_sum(&a, &b)?)?;
    out.push_ky_fan(Some("capped"), &sv(&lhs), &sv(&rhs));
    Ok(out.finish().with_meta("f", &f))
}

/// Evaluates one of the constructed counterexamples. The returned result
/// records the violation (so `holds` is false for every case); use
/// [`verify_fixture`] to confirm the expected values.
pub fn repro_counterexample(case: FixtureCase) -> CheckResult {
    let r = match case {
        FixtureCase::DifferenceCap => difference_cap(),
        FixtureCase::ShiftCap => shift_cap(),
        FixtureCase::Interlace => interlace(),
    };
    r.expect("fixtures are well-formed").with_meta("case", case)
}

fn close(got: f64, want: f64, what: &str) -> std::result::Result<(), String> {
    if (got - want).abs() <= FIXTURE_TOL {
        Ok(())
    } else {
        Err(format!("{what}: got {got:.12}, expected {want:.12}"))
    }
}

fn row<'a>(r: &'a CheckResult, k: usize, claim: Option<&str>) -> std::result::Result<&'a crate::theorems::Row, String> {
    r.row(k, claim).ok_or_else(|| format!("missing row k={k}"))
}

/// Checks a fixture result against the values it is meant to reproduce.
pub fn verify_fixture(case: FixtureCase, r: &CheckResult) -> std::result::Result<(), String> {
    match case {
        FixtureCase::DifferenceCap => {
            let k2 = row(r, 2, None)?;
            close(k2.lhs, SQRT_2, "difference-cap lhs at k=2")?;
            close(k2.rhs, 1.0, "difference-cap rhs at k=2")?;
            if k2.margin >= -STRICT_GAP {
                return Err(format!("difference-cap: no strict violation at k=2 (margin {})", k2.margin));
            }
            let k1 = row(r, 1, None)?;
            if k1.margin < -FIXTURE_TOL {
                return Err(format!("difference-cap: unexpected violation at k=1 (margin {})", k1.margin));
            }
        }
        FixtureCase::ShiftCap => {
            let k2 = row(r, 2, None)?;
            close(k2.lhs, 2.0 * SQRT_2, "shift-cap lhs at k=2")?;
            close(k2.rhs, 1.0 + SQRT_2, "shift-cap rhs at k=2")?;
            if k2.margin >= -0.41 {
                return Err(format!("shift-cap: gap {} not above 0.41", -k2.margin));
            }
        }
        FixtureCase::Interlace => {
            for k in 1..=3 {
                let link = row(r, k, Some("chain"))?;
                if link.margin <= STRICT_GAP {
                    return Err(format!("interlace: link {k} gap {} not above {STRICT_GAP}", link.margin));
                }
            }
            let capped = row(r, 2, Some("capped"))?;
            if capped.margin >= -STRICT_GAP {
                return Err(format!("interlace: capped comparison not violated (margin {})", capped.margin));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn converse_witness_hand_values() {
        let (l, r) = concavity_converse_witness(&|t: f64| t * t, 1.0, 3.0).unwrap();
        assert!((l - 10.0).abs() < 1e-12 && (r - 8.0).abs() < 1e-12);
        let (l, r) = concavity_converse_witness(&ConcaveFn::Sqrt, 1.0, 9.0).unwrap();
        assert!((l - 4.0).abs() < 1e-12 && (r - 20f64.sqrt()).abs() < 1e-12);
        let (l, r) = concavity_converse_witness(&|t: f64| t, 2.5, 0.7).unwrap();
        assert!((l - 3.2).abs() < 1e-12 && (r - 3.2).abs() < 1e-12);
        assert!(concavity_converse_witness(&ConcaveFn::Sqrt, 0.0, 1.0).is_err());
        assert!(concavity_converse_witness(&|t: f64| t + 1.0, 1.0, 2.0).is_err());
    }

    #[test]
    fn every_fixture_verifies() {
        for case in FixtureCase::ALL {
            let r = repro_counterexample(case);
            verify_fixture(case, &r).unwrap();
            assert!(!r.holds);
            assert_eq!(case.as_str().parse::<FixtureCase>().unwrap(), case);
        }
    }

    #[test]
    fn interlace_values() {
        let r = repro_counterexample(FixtureCase::Interlace);
        let h = FRAC_1_SQRT_2;
        let s3 = 3f64.sqrt();
        let chain: Vec<_> = r.per_k.iter().filter(|row| row.claim.as_deref() == Some("chain")).collect();
        assert!((chain[0].lhs - (1.0 - h)).abs() < 1e-12);
        assert!((chain[1].lhs - (s3 - 1.0) / 2.0).abs() < 1e-12);
        assert!((chain[2].lhs - (s3 + 1.0) / 2.0).abs() < 1e-12);
        assert!((chain[2].rhs - (1.0 + h)).abs() < 1e-12);
        let capped = r.row(2, Some("capped")).unwrap();
        assert!((capped.lhs - (s3 - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn verification_rejects_wrong_numbers() {
        let r = repro_counterexample(FixtureCase::ShiftCap);
        assert!(verify_fixture(FixtureCase::DifferenceCap, &r).is_err());
        assert!("abs-split".parse::<FixtureCase>().is_err());
    }
}
