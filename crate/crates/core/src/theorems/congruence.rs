use super::{
    require_non_negative_concave, require_normal, require_psd, require_same_dim, sv, CheckResult, PRECONDITION_TOL,
};
use crate::concave::{AffineConcave, ConcaveFn, ConvexPower, RealFn};
use crate::error::{Error, Result};
use crate::matcore::{self, apply_fn_abs, eigh, is_contractive_family, is_expansive, min_eigenvalue, ComplexMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CongruenceScope {
    AllNorms,
    TraceOnly,
}

fn require_expansive(zs: &[ComplexMatrix]) -> Result<()> {
    for (i, z) in zs.iter().enumerate() {
        if !is_expansive(z, PRECONDITION_TOL)? {
            let n = z.dim();
            let g = &ComplexMatrix::identity(n).congruence(z) - &ComplexMatrix::identity(n);
            return Err(Error::NotExpansive { index: i, min_eigenvalue: min_eigenvalue(&g) });
        }
    }
    Ok(())
}

fn paired<'a>(ops: &'a [ComplexMatrix], zs: &'a [ComplexMatrix]) -> Result<usize> {
    if ops.is_empty() || ops.len() != zs.len() {
        return Err(Error::InvalidArgument(format!(
            "need equally many (>= 1) operands and congruence factors, got {} and {}",
            ops.len(),
            zs.len()
        )));
    }
    let all: Vec<&ComplexMatrix> = ops.iter().chain(zs).collect();
    require_same_dim(&all)
}

/// `Σ Z_i* X_i Z_i`.
fn congruence_sum(ops: &[ComplexMatrix], zs: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    let terms: Vec<ComplexMatrix> = ops.iter().zip(zs).map(|(a, z)| a.congruence(z)).collect();
    matcore::sum(&terms)
}

fn congruence_sum_fn<F: RealFn + ?Sized>(f: &F, ops: &[ComplexMatrix], zs: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    let terms = ops.iter().zip(zs).map(|(a, z)| Ok(apply_fn_abs(f, a)?.congruence(z))).collect::<Result<Vec<_>>>()?;
    matcore::sum(&terms)
}

/// `‖f(|Σ Z_i*A_iZ_i|)‖ ≤ ‖Σ Z_i*f(|A_i|)Z_i‖` for normal `A_i` and
/// expansive `Z_i`.
///
/// With [`CongruenceScope::TraceOnly`] the comparison is the trace
/// inequality, and `affine_part = Some(a)` replaces `f` by `f(t) + a·t`, which
/// may take negative values. A negative `a` is only accepted for positive
/// semi-definite operands: for indefinite Hermitian operands the trace
/// inequality fails with such functions (take `f(t) = −t`, where it reduces
/// to a reversed triangle inequality for the trace norm).
pub fn check_expansive_congruence(
    f: &ConcaveFn,
    ops: &[ComplexMatrix],
    zs: &[ComplexMatrix],
    scope: CongruenceScope,
    affine_part: Option<f64>,
    tol: f64,
) -> Result<CheckResult> {
    require_non_negative_concave(f)?;
    let n = paired(ops, zs)?;
    require_normal(ops)?;
    require_expansive(zs)?;
    if affine_part.is_some() && scope != CongruenceScope::TraceOnly {
        return Err(Error::InvalidArgument("an affine part is only meaningful for the trace inequality".into()));
    }
    let slope = affine_part.unwrap_or(0.0);
    if slope < 0.0 {
        require_psd(&ops.iter().collect::<Vec<_>>())?;
    }
    let inner = congruence_sum(ops, zs)?;
    let out = match scope {
        CongruenceScope::AllNorms => {
            let lhs = apply_fn_abs(f, &inner)?;
            let rhs = congruence_sum_fn(f, ops, zs)?;
            CheckResult::ky_fan("expansive_congruence", &sv(&lhs), &sv(&rhs), tol)
        }
        CongruenceScope::TraceOnly => {
            let h = AffineConcave::new(f.clone(), slope)?;
            let lhs = apply_fn_abs(&h, &inner)?.trace().re;
            let rhs = congruence_sum_fn(&h, ops, zs)?.trace().re;
            let mut out = CheckResult::new("expansive_congruence_trace", n, tol);
            out.push_row(n, lhs, rhs, Some("trace"));
            out.finish()
        }
    };
    Ok(out.with_meta("f", f).with_meta("affine_part", slope).with_meta("m", ops.len()))
}

/// Rotfel'd trace inequality `Tr h(A₁+⋯+A_m) ≤ Σ Tr h(A_i)` for PSD
/// operands and `h = g + slope·t`.
pub fn check_rotfeld(h: &AffineConcave, ops: &[ComplexMatrix], tol: f64) -> Result<CheckResult> {
    require_psd(&ops.iter().collect::<Vec<_>>())?;
    let n = require_same_dim(&ops.iter().collect::<Vec<_>>())?;
    let ids = vec![ComplexMatrix::identity(n); ops.len()];
    Ok(check_expansive_congruence(&h.g, ops, &ids, CongruenceScope::TraceOnly, Some(h.slope), tol)?.named("rotfeld"))
}

fn convex_reverse(
    name: &str,
    ops: &[ComplexMatrix],
    zs: &[ComplexMatrix],
    p: f64,
    tol: f64,
) -> Result<CheckResult> {
    let power = ConvexPower::new(p)?;
    paired(ops, zs)?;
    require_expansive(zs)?;
    let lhs = congruence_sum_fn(&power, ops, zs)?;
    let rhs = apply_fn_abs(&power, &congruence_sum(ops, zs)?)?;
    Ok(CheckResult::ky_fan(name, &sv(&lhs), &sv(&rhs), tol).with_meta("p", p).with_meta("m", ops.len()))
}

/// `‖Σ Z_i*A_i^pZ_i‖ ≤ ‖(Σ Z_i*A_iZ_i)^p‖` for PSD `A_i`, expansive `Z_i`
/// and `p > 1`. The direction is reversed relative to the concave results.
pub fn check_convex_reverse(ops: &[ComplexMatrix], zs: &[ComplexMatrix], p: f64, tol: f64) -> Result<CheckResult> {
    ConvexPower::new(p)?;
    require_psd(&ops.iter().collect::<Vec<_>>())?;
    convex_reverse("convex_reverse", ops, zs, p, tol)
}

/// The convex reverse inequality with positivity weakened to normality,
/// read as `‖Σ Z_i*|A_i|^pZ_i‖ ≤ ‖|Σ Z_i*A_iZ_i|^p‖`. This is false in
/// general; it exists for the counterexample search.
pub fn check_convex_reverse_normal(ops: &[ComplexMatrix], zs: &[ComplexMatrix], p: f64, tol: f64) -> Result<CheckResult> {
    ConvexPower::new(p)?;
    require_normal(ops)?;
    convex_reverse("convex_reverse_normal", ops, zs, p, tol)
}

/// Contractive Jensen statement:
/// `f(Σ Z_i*A_iZ_i) ≥ V (Σ Z_i*f(A_i)Z_i) V*` for some unitary `V`,
/// checked in the equivalent eigenvalue form
/// `λ_j(Σ Z_i*f(A_i)Z_i) ≤ λ_j(f(Σ Z_i*A_iZ_i))` for every `j`.
/// Rows carry the right-hand operator's eigenvalues in `lhs`.
pub fn check_contractive_jensen(
    f: &ConcaveFn,
    ops: &[ComplexMatrix],
    zs: &[ComplexMatrix],
    tol: f64,
) -> Result<CheckResult> {
    require_non_negative_concave(f)?;
    paired(ops, zs)?;
    require_psd(&ops.iter().collect::<Vec<_>>())?;
    if !is_contractive_family(zs, PRECONDITION_TOL)? {
        let gram = matcore::sum(&zs.iter().map(|z| ComplexMatrix::identity(z.dim()).congruence(z)).collect::<Vec<_>>())?;
        let max_eigenvalue = eigh(&gram).eigenvalues[0];
        return Err(Error::NotContractive { max_eigenvalue });
    }
    let big = eigh(&apply_fn_abs(f, &congruence_sum(ops, zs)?)?).eigenvalues;
    let small = eigh(&congruence_sum_fn(f, ops, zs)?).eigenvalues;
    Ok(CheckResult::pointwise("contractive_jensen", &small, &big, tol).with_meta("f", f).with_meta("m", ops.len()))
}
