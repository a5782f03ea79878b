//! One checkable predicate per inequality.
//!
//! Each predicate builds the two sides of its inequality and reduces them to
//! a [`CheckResult`]: a list of rows `(k, lhs, rhs, margin = rhs − lhs)` that
//! must all be non-negative up to a relative tolerance. For symmetric-norm
//! statements the rows are the Ky Fan norms `k = 1..n`, which by the Ky Fan
//! principle decide every symmetric norm at once.

mod blocks;
mod congruence;
mod fixtures;
mod majorization;
mod subadditivity;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::concave::ConcaveFn;
use crate::error::{Error, Result};
use crate::matcore::{is_normal, is_psd, min_eigenvalue, normality_defect, ComplexMatrix};
use crate::norms::{ky_fan_profile, SymmetricNorm};

pub use blocks::{check_block_subadditivity, dilation_pattern_split, BlockMode};
pub use congruence::{
    check_contractive_jensen, check_convex_reverse, check_convex_reverse_normal, check_expansive_congruence,
    check_rotfeld, CongruenceScope,
};
pub use fixtures::{concavity_converse_witness, repro_counterexample, verify_fixture, FixtureCase, STRICT_GAP};
pub use majorization::{check_abs_diff_dominance, check_direct_sum_majorization, check_sum_compression};
pub use subadditivity::{
    check_cartesian, check_dilated_subadditivity, check_abs_split_identity, check_hermitian_part, check_intermediate,
    check_shift_identity, check_subadditivity,
};

/// Tolerance used when validating operand classes (normal, PSD, expansive).
pub const PRECONDITION_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub k: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    /// Which sub-claim the row belongs to, when a check bundles several.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claim: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub dim: usize,
    pub per_k: Vec<Row>,
    pub holds: bool,
    pub strict_violation_at: Option<usize>,
    pub metadata: BTreeMap<String, String>,
    /// Singular values of the primary comparison, kept so the result can be
    /// re-evaluated under a single symmetric norm.
    #[serde(skip)]
    spectra: Option<(Vec<f64>, Vec<f64>)>,
    #[serde(skip)]
    tol: f64,
}

fn violates(margin: f64, rhs: f64, tol: f64) -> bool {
    margin < -tol * rhs.abs().max(1.0)
}

impl CheckResult {
    pub fn new(name: impl Into<String>, dim: usize, tol: f64) -> Self {
        CheckResult {
            name: name.into(),
            dim,
            per_k: Vec::new(),
            holds: true,
            strict_violation_at: None,
            metadata: BTreeMap::new(),
            spectra: None,
            tol,
        }
    }

    /// Ky Fan comparison of two descending spectra; the shorter one is
    /// zero-padded.
    pub fn ky_fan(name: impl Into<String>, lhs_sv: &[f64], rhs_sv: &[f64], tol: f64) -> Self {
        let n = lhs_sv.len().max(rhs_sv.len());
        let mut out = CheckResult::new(name, n, tol);
        out.push_ky_fan(None, lhs_sv, rhs_sv);
        out.spectra = Some((lhs_sv.to_vec(), rhs_sv.to_vec()));
        out.finish()
    }

    /// Entrywise comparison `lhs[j] ≤ rhs[j]` (eigenvalue dominance).
    pub fn pointwise(name: impl Into<String>, lhs: &[f64], rhs: &[f64], tol: f64) -> Self {
        let mut out = CheckResult::new(name, lhs.len().max(rhs.len()), tol);
        out.push_pointwise(None, lhs, rhs);
        out.finish()
    }

    pub fn push_row(&mut self, k: usize, lhs: f64, rhs: f64, claim: Option<&str>) {
        self.per_k.push(Row { k, lhs, rhs, margin: rhs - lhs, claim: claim.map(str::to_owned) });
    }

    pub fn push_ky_fan(&mut self, claim: Option<&str>, lhs_sv: &[f64], rhs_sv: &[f64]) {
        let n = lhs_sv.len().max(rhs_sv.len());
        let l = ky_fan_profile(lhs_sv, n);
        let r = ky_fan_profile(rhs_sv, n);
        for k in 0..n {
            self.push_row(k + 1, l[k], r[k], claim);
        }
    }

    pub fn push_pointwise(&mut self, claim: Option<&str>, lhs: &[f64], rhs: &[f64]) {
        for (j, (l, r)) in lhs.iter().zip(rhs).enumerate() {
            self.push_row(j + 1, *l, *r, claim);
        }
    }

    /// Adds both directions of a Ky Fan comparison, which together assert the
    /// two spectra are equal.
    pub fn push_ky_fan_equality(&mut self, claim: &str, a_sv: &[f64], b_sv: &[f64]) {
        self.push_ky_fan(Some(&format!("{claim} (<=)")), a_sv, b_sv);
        self.push_ky_fan(Some(&format!("{claim} (>=)")), b_sv, a_sv);
    }

    /// Recomputes `holds` and `strict_violation_at` from the rows.
    pub fn finish(mut self) -> Self {
        let tol = self.tol;
        let worst = self
            .per_k
            .iter()
            .filter(|r| violates(r.margin, r.rhs, tol))
            .min_by(|a, b| a.margin.total_cmp(&b.margin))
            .map(|r| r.k);
        self.holds = worst.is_none();
        self.strict_violation_at = worst;
        self
    }

    pub fn with_meta(mut self, key: &str, value: impl ToString) -> Self {
        self.metadata.insert(key.to_owned(), value.to_string());
        self
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// A result for a trial whose hypotheses were not met.
    pub fn skipped(name: impl Into<String>, dim: usize, reason: &str) -> Self {
        CheckResult::new(name, dim, 0.0).with_meta("status", "skipped").with_meta("skip_reason", reason)
    }

    pub fn is_skipped(&self) -> bool {
        self.metadata.get("status").map(String::as_str) == Some("skipped")
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    pub fn min_margin(&self) -> f64 {
        self.per_k.iter().map(|r| r.margin).fold(f64::INFINITY, f64::min)
    }

    /// Some row has `margin < −gap`, with `gap` absolute.
    pub fn has_strict_violation(&self, gap: f64) -> bool {
        self.per_k.iter().any(|r| r.margin < -gap)
    }

    pub fn row(&self, k: usize, claim: Option<&str>) -> Option<&Row> {
        self.per_k.iter().find(|r| r.k == k && r.claim.as_deref() == claim)
    }

    /// Re-evaluates a symmetric-norm comparison under a single norm. The
    /// resulting row uses `k` for Ky Fan norms, `n` for the trace norm, `1`
    /// for the operator norm and `0` for Schatten norms. Results without a
    /// symmetric-norm comparison are returned unchanged.
    pub fn restrict_to(&self, norm: SymmetricNorm) -> Result<Self> {
        let Some((lhs_sv, rhs_sv)) = &self.spectra else {
            return Ok(self.clone());
        };
        let n = lhs_sv.len().max(rhs_sv.len());
        let pad = |v: &[f64]| {
            let mut p = v.to_vec();
            p.resize(n, 0.0);
            p
        };
        let (l, r) = (pad(lhs_sv), pad(rhs_sv));
        let k = match norm {
            SymmetricNorm::KyFan(k) => k,
            SymmetricNorm::Trace => n,
            SymmetricNorm::Operator => 1,
            SymmetricNorm::Schatten(_) => 0,
        };
        let mut out = CheckResult::new(self.name.clone(), self.dim, self.tol);
        out.metadata = self.metadata.clone();
        out.metadata.insert("norm".into(), norm.to_string());
        out.push_row(k, norm.eval_singular_values(&l)?, norm.eval_singular_values(&r)?, None);
        out.spectra = self.spectra.clone();
        Ok(out.finish())
    }
}

pub(crate) fn require_non_negative_concave(f: &ConcaveFn) -> Result<()> {
    f.validate()?;
    if !f.is_non_negative() {
        return Err(Error::Precondition(format!("{f} is not non-negative on [0, inf)")));
    }
    Ok(())
}

pub(crate) fn require_normal(ops: &[ComplexMatrix]) -> Result<()> {
    for (i, a) in ops.iter().enumerate() {
        if !is_normal(a, PRECONDITION_TOL)? {
            return Err(Error::NotNormal { index: Some(i), defect: normality_defect(a) });
        }
    }
    Ok(())
}

pub(crate) fn require_psd(ops: &[&ComplexMatrix]) -> Result<()> {
    for (i, a) in ops.iter().enumerate() {
        if !is_psd(a, PRECONDITION_TOL)? {
            let min_eigenvalue = if crate::matcore::is_hermitian(a, PRECONDITION_TOL)? { min_eigenvalue(a) } else { f64::NAN };
            return Err(Error::NotPsd { index: Some(i), min_eigenvalue });
        }
    }
    Ok(())
}

pub(crate) fn require_same_dim(ops: &[&ComplexMatrix]) -> Result<usize> {
    let n = ops.first().ok_or_else(|| Error::InvalidArgument("empty operand list".into()))?.dim();
    for a in ops {
        if a.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, got: a.dim() });
        }
    }
    Ok(n)
}

pub(crate) fn sv(a: &ComplexMatrix) -> Vec<f64> {
    crate::matcore::singular_values(a).into_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_uses_relative_tolerance_with_floor_one() {
        let r = CheckResult::ky_fan("t", &[1.0 + 1e-10], &[1.0], 1e-9);
        assert!(r.holds);
        let r = CheckResult::ky_fan("t", &[1000.0 + 1e-5], &[1000.0], 1e-9);
        assert!(!r.holds);
        assert_eq!(r.strict_violation_at, Some(1));
        let r = CheckResult::ky_fan("t", &[1e3, 0.0], &[1e3 + 1e-4, 0.0], 1e-9);
        assert!(r.holds && r.strict_violation_at.is_none());
    }

    #[test]
    fn restriction_to_single_norms() {
        let r = CheckResult::ky_fan("t", &[2.0, 2.0], &[3.0, 0.5], 1e-9);
        assert!(!r.holds);
        assert_eq!(r.strict_violation_at, Some(2));
        let op = r.restrict_to(SymmetricNorm::Operator).unwrap();
        assert!(op.holds && op.per_k.len() == 1 && op.per_k[0].k == 1);
        let tr = r.restrict_to(SymmetricNorm::Trace).unwrap();
        assert!(!tr.holds && tr.per_k[0].k == 2);
        let s = r.restrict_to(SymmetricNorm::Schatten(2.0)).unwrap();
        assert!((s.per_k[0].lhs - 8f64.sqrt()).abs() < 1e-15);
        assert_eq!(s.metadata["norm"], "schatten:2.0");
    }

    #[test]
    fn json_schema_fields() {
        let r = CheckResult::ky_fan("x", &[1.0], &[2.0], 1e-9).with_meta("f", "sqrt");
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, vec!["dim", "holds", "metadata", "name", "per_k", "strict_violation_at"]);
        assert_eq!(v["per_k"][0], serde_json::json!({"k": 1, "lhs": 1.0, "rhs": 2.0, "margin": 1.0}));
    }

    #[test]
    fn skipped_marker() {
        let s = CheckResult::skipped("direct-sum-majorization", 3, "vacuous");
        assert!(s.is_skipped() && s.per_k.is_empty());
    }
}
