//! Symmetric norms and weak majorization.
//!
//! Every symmetric norm is a function of the singular values, and two
//! matrices compare in all symmetric norms exactly when they compare in all
//! Ky Fan norms. [`weakly_majorized`] decides the latter directly.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::matcore::{singular_values, ComplexMatrix};

/// Default relative tolerance for inequality verdicts.
pub const TOL_VERDICT: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SymmetricNorm {
    KyFan(usize),
    Schatten(f64),
    Trace,
    Operator,
}

impl SymmetricNorm {
    pub fn validate(&self, dim: usize) -> Result<()> {
        match *self {
            SymmetricNorm::KyFan(k) if k == 0 || k > dim => {
                Err(Error::InvalidArgument(format!("Ky Fan index {k} outside 1..={dim}")))
            }
            SymmetricNorm::Schatten(p) if p.is_nan() || p < 1.0 => {
                Err(Error::InvalidArgument(format!("Schatten exponent must be >= 1, got {p}")))
            }
            _ => Ok(()),
        }
    }

    /// Evaluates the norm from a descending list of singular values.
    pub fn eval_singular_values(&self, sv: &[f64]) -> Result<f64> {
        self.validate(sv.len())?;
        Ok(match *self {
            SymmetricNorm::KyFan(k) => sv[..k].iter().sum(),
            SymmetricNorm::Trace => sv.iter().sum(),
            SymmetricNorm::Operator => sv.first().copied().unwrap_or(0.0),
            SymmetricNorm::Schatten(p) if p.is_infinite() => sv.first().copied().unwrap_or(0.0),
            SymmetricNorm::Schatten(p) => {
                // scale by the largest value so large p does not overflow
                let top = sv.first().copied().unwrap_or(0.0);
                if top == 0.0 {
                    0.0
                } else {
                    top * sv.iter().map(|s| (s / top).powf(p)).sum::<f64>().powf(1.0 / p)
                }
            }
        })
    }
}

impl fmt::Display for SymmetricNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymmetricNorm::KyFan(k) => write!(f, "kyfan:{k}"),
            SymmetricNorm::Schatten(p) => write!(f, "schatten:{p:?}"),
            SymmetricNorm::Trace => write!(f, "trace"),
            SymmetricNorm::Operator => write!(f, "operator"),
        }
    }
}

impl FromStr for SymmetricNorm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parsed = match s.split_once(':') {
            None if s == "trace" => SymmetricNorm::Trace,
            None if s == "operator" => SymmetricNorm::Operator,
            Some(("kyfan", k)) => {
                SymmetricNorm::KyFan(k.parse().map_err(|_| Error::Parse(format!("bad Ky Fan index {k:?}")))?)
            }
            Some(("schatten", p)) => {
                let p: f64 = p.parse().map_err(|_| Error::Parse(format!("bad Schatten exponent {p:?}")))?;
                if p.is_nan() || p < 1.0 {
                    return Err(Error::InvalidArgument(format!("Schatten exponent must be >= 1, got {p}")));
                }
                SymmetricNorm::Schatten(p)
            }
            _ => return Err(Error::Parse(format!("unknown norm selector {s:?}"))),
        };
        if let SymmetricNorm::KyFan(0) = parsed {
            return Err(Error::InvalidArgument("Ky Fan index must be >= 1".into()));
        }
        Ok(parsed)
    }
}

/// Sum of the `k` largest singular values.
pub fn ky_fan(a: &ComplexMatrix, k: usize) -> Result<f64> {
    SymmetricNorm::KyFan(k).eval_singular_values(singular_values(a).as_slice())
}

/// `(Σ σ_j^p)^{1/p}`.
pub fn schatten(a: &ComplexMatrix, p: f64) -> Result<f64> {
    SymmetricNorm::Schatten(p).eval_singular_values(singular_values(a).as_slice())
}

pub fn norm_eval(norm: SymmetricNorm, a: &ComplexMatrix) -> Result<f64> {
    norm.eval_singular_values(singular_values(a).as_slice())
}

/// Partial sums `‖·‖_(1), …, ‖·‖_(len)` of a descending spectrum, padded
/// with zeros up to `len`.
pub fn ky_fan_profile(sv: &[f64], len: usize) -> Vec<f64> {
    let mut acc = 0.0;
    (0..len)
        .map(|j| {
            acc += sv.get(j).copied().unwrap_or(0.0);
            acc
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MajorizationVerdict {
    pub holds: bool,
    /// `‖B‖_(k) − ‖A‖_(k)` for `k = 1..n`.
    pub per_k_margins: Vec<f64>,
    /// 1-based index of the smallest margin.
    pub worst_k: usize,
}

/// Ky Fan comparison of two descending spectra. The shorter one is padded
/// with zeros, which is how a norm on a smaller space is compared with one on
/// a larger space.
pub fn majorization_from_spectra(a_sv: &[f64], b_sv: &[f64], tol: f64) -> MajorizationVerdict {
    let n = a_sv.len().max(b_sv.len());
    let lhs = ky_fan_profile(a_sv, n);
    let rhs = ky_fan_profile(b_sv, n);
    let per_k_margins: Vec<f64> = rhs.iter().zip(&lhs).map(|(r, l)| r - l).collect();
    let holds = per_k_margins.iter().zip(&rhs).all(|(m, r)| *m >= -tol * r.abs().max(1.0));
    let worst_k = per_k_margins
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i + 1)
        .unwrap_or(1);
    MajorizationVerdict { holds, per_k_margins, worst_k }
}

/// `A ≺_w B`: every Ky Fan norm of `A` is at most that of `B`.
pub fn weakly_majorized(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> Result<MajorizationVerdict> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), got: b.dim() });
    }
    Ok(majorization_from_spectra(singular_values(a).as_slice(), singular_values(b).as_slice(), tol))
}
