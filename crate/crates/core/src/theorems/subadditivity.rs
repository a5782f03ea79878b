use super::{require_non_negative_concave, require_normal, require_same_dim, sv, CheckResult};
use crate::concave::ConcaveFn;
use crate::error::Result;
use crate::matcore::{self, apply_fn_abs, hermitian_dilation, matrix_abs, pos_neg_parts, ComplexMatrix};
use crate::norms::ky_fan_profile;

fn sum_fn_abs(f: &ConcaveFn, ops: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    let terms = ops.iter().map(|a| apply_fn_abs(f, a)).collect::<Result<Vec<_>>>()?;
    matcore::sum(&terms)
}

/// `‖f(|A₁+⋯+A_m|)‖ ≤ ‖f(|A₁|)+⋯+f(|A_m|)‖` for normal `A_i`.
pub fn check_subadditivity(f: &ConcaveFn, ops: &[ComplexMatrix], tol: f64) -> Result<CheckResult> {
    require_non_negative_concave(f)?;
    require_same_dim(&ops.iter().collect::<Vec<_>>())?;
    require_normal(ops)?;
    let lhs = apply_fn_abs(f, &matcore::sum(ops)?)?;
    let rhs = sum_fn_abs(f, ops)?;
    Ok(CheckResult::ky_fan("subadditivity", &sv(&lhs), &sv(&rhs), tol)
        .with_meta("f", f)
        .with_meta("m", ops.len()))
}

/// `‖f(|A+B|)‖ ≤ ‖f(|A|+|B|)‖`. Holds for e-convex `f` and normal operands,
/// fails for general concave `f`.
pub fn check_intermediate(f: &ConcaveFn, a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> Result<CheckResult> {
    require_non_negative_concave(f)?;
    require_same_dim(&[a, b])?;
    require_normal(&[a.clone(), b.clone()])?;
    let lhs = apply_fn_abs(f, &(a + b))?;
    let rhs = apply_fn_abs(f, &(&matrix_abs(a)? + &matrix_abs(b)?))?;
    Ok(CheckResult::ky_fan("intermediate", &sv(&lhs), &sv(&rhs), tol).with_meta("f", f))
}

/// `‖f(|Z|)‖ ≤ ‖f(|A|)+f(|B|)‖` for the Cartesian decomposition `Z = A + iB`.
pub fn check_cartesian(f: &ConcaveFn, z: &ComplexMatrix, tol: f64) -> Result<CheckResult> {
    require_non_negative_concave(f)?;
    let (re, im) = (z.hermitian_part(), z.skew_part());
    let lhs = apply_fn_abs(f, z)?;
    let rhs = &apply_fn_abs(f, &re)? + &apply_fn_abs(f, &im)?;
    Ok(CheckResult::ky_fan("cartesian", &sv(&lhs), &sv(&rhs), tol).with_meta("f", f))
}

/// `‖f(|Z+Z*|)‖ ≤ ‖f(|Z|)+f(|Z*|)‖` for arbitrary `Z`.
pub fn check_hermitian_part(f: &ConcaveFn, z: &ComplexMatrix, tol: f64) -> Result<CheckResult> {
    require_non_negative_concave(f)?;
    let zs = z.adjoint();
    let lhs = apply_fn_abs(f, &(z + &zs))?;
    let rhs = &apply_fn_abs(f, z)? + &apply_fn_abs(f, &zs)?;
    Ok(CheckResult::ky_fan("hermitian_part", &sv(&lhs), &sv(&rhs), tol).with_meta("f", f))
}

/// Subadditivity for general `A`, `B` through their Hermitian dilations.
///
/// The primary rows compare the dilated operands on the doubled space. A
/// second claim checks that the left side's spectrum is the spectrum of
/// `f(|A+B|) ⊕ f(|A*+B*|)`, i.e. every singular value of `f(|A+B|)`
/// appears twice.
pub fn check_dilated_subadditivity(f: &ConcaveFn, a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> Result<CheckResult> {
    require_non_negative_concave(f)?;
    require_same_dim(&[a, b])?;
    let (da, db) = (hermitian_dilation(a), hermitian_dilation(b));
    let base = check_subadditivity(f, &[da.clone(), db.clone()], tol)?;
    let lhs_big = sv(&apply_fn_abs(f, &(&da + &db))?);
    let small = sv(&apply_fn_abs(f, &(a + b))?);
    let doubled = {
        let mut d: Vec<f64> = small.iter().flat_map(|&s| [s, s]).collect();
        d.sort_by(|x, y| y.total_cmp(x));
        d
    };
    let mut out = base;
    out.push_ky_fan_equality("doubling", &lhs_big, &doubled);
    Ok(out.finish().named("dilation"))
}

/// `f(|H|) = g(H₊) + g(H₋)` with `g = f − f(0)`, as a Frobenius defect row
/// `‖f(|H|) − (g(H₊)+g(H₋))‖_F ≤ 0` evaluated on `g`.
pub fn check_abs_split_identity(f: &ConcaveFn, h: &ComplexMatrix, tol: f64) -> Result<CheckResult> {
    let g = f.shift_to_zero();
    let (pos, neg) = pos_neg_parts(h, super::PRECONDITION_TOL)?;
    let lhs = apply_fn_abs(&g, h)?;
    let rhs = &apply_fn_abs(&g, &pos)? + &apply_fn_abs(&g, &neg)?;
    let defect = (&lhs - &rhs).frobenius_norm();
    let mut out = CheckResult::new("abs-split", h.dim(), tol);
    out.push_row(1, defect, 0.0, Some("frobenius defect"));
    Ok(out.finish().with_meta("f", f))
}

/// `‖f(|X|)‖_(k) = k·f(0) + ‖g(|X|)‖_(k)` for `X = A+B` and
/// `‖f(|A|)+f(|B|)‖_(k) = 2k·f(0) + ‖g(|A|)+g(|B|)‖_(k)`, all `k`.
pub fn check_shift_identity(f: &ConcaveFn, a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> Result<CheckResult> {
    require_non_negative_concave(f)?;
    let n = require_same_dim(&[a, b])?;
    let g = f.shift_to_zero();
    let f0 = f.at_zero();
    let s = a + b;
    let lf = ky_fan_profile(&sv(&apply_fn_abs(f, &s)?), n);
    let lg = ky_fan_profile(&sv(&apply_fn_abs(&g, &s)?), n);
    let rf = ky_fan_profile(&sv(&(&apply_fn_abs(f, a)? + &apply_fn_abs(f, b)?)), n);
    let rg = ky_fan_profile(&sv(&(&apply_fn_abs(&g, a)? + &apply_fn_abs(&g, b)?)), n);
    let mut out = CheckResult::new("shift", n, tol);
    for k in 0..n {
        let kk = (k + 1) as f64;
        let d_sum = (lf[k] - (kk * f0 + lg[k])).abs();
        let d_pair = (rf[k] - (2.0 * kk * f0 + rg[k])).abs();
        out.push_row(k + 1, d_sum, 0.0, Some("|A+B| defect"));
        out.push_row(k + 1, d_pair, 0.0, Some("|A|,|B| defect"));
    }
    Ok(out.finish().with_meta("f", f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::ComplexMatrix as M;

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn fixture() -> (M, M) {
        (M::diag_real(&[1.0, 0.0]), M::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap())
    }

    #[test]
    fn scalar_case_with_sqrt() {
        let r = check_subadditivity(&ConcaveFn::Sqrt, &[M::diag_real(&[4.0]), M::diag_real(&[9.0])], 1e-9).unwrap();
        assert!(r.holds);
        assert!((r.per_k[0].lhs - 13f64.sqrt()).abs() < 1e-14);
        assert!((r.per_k[0].rhs - 5.0).abs() < 1e-14);
    }

    #[test]
    fn singleton_is_equality() {
        let a = M::from_complex_rows(&[&[(1.0, 1.0), (0.0, 0.0)], &[(0.0, 0.0), (-2.0, 0.5)]]).unwrap();
        let r = check_subadditivity(&ConcaveFn::Sqrt, &[a], 1e-9).unwrap();
        assert!(r.holds && r.per_k.iter().all(|row| row.margin.abs() < 1e-14));
    }

    #[test]
    fn fixture_pair_with_negated_operand_holds() {
        let (a, b) = fixture();
        let f = ConcaveFn::MinCap { c: H };
        let r = check_subadditivity(&f, &[a.clone(), -&b], 1e-9).unwrap();
        assert!(r.holds);
        // lhs: both singular values of A−B equal √2/2 and stay under the cap
        assert!((r.per_k[1].lhs - 2f64.sqrt()).abs() < 1e-12);
        // rhs: f(A) + f(B) is PSD with trace √2/2 + √2/2
        assert!((r.per_k[1].rhs - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn non_normal_operand_is_named() {
        let err = check_subadditivity(&ConcaveFn::Sqrt, &[M::identity(2), M::shift(2)], 1e-9).unwrap_err();
        assert!(matches!(err, crate::Error::NotNormal { index: Some(1), .. }));
        let neg = ConcaveFn::Affine { a: -1.0, b: 1.0 };
        assert!(check_subadditivity(&neg, &[M::identity(2)], 1e-9).is_err());
    }

    #[test]
    fn intermediate_fails_on_fixture() {
        let (a, b) = fixture();
        let r = check_intermediate(&ConcaveFn::MinCap { c: H }, &a, &(-&b), 1e-9).unwrap();
        assert!(!r.holds);
        assert_eq!(r.strict_violation_at, Some(2));
    }

    #[test]
    fn cartesian_reductions() {
        let f = ConcaveFn::MinCap { c: 0.8 };
        let h = M::from_complex_rows(&[&[(1.0, 0.0), (0.3, -0.2)], &[(0.3, 0.2), (-0.5, 0.0)]]).unwrap();
        assert!(check_cartesian(&f, &h, 1e-9).unwrap().holds);
        assert!(check_cartesian(&f, &h.scale_complex(crate::matcore::c(0.0, 1.0)), 1e-9).unwrap().holds);
        let (a, b) = fixture();
        let z = &a + &b.scale_complex(crate::matcore::c(0.0, 1.0));
        assert!(check_cartesian(&f, &z, 1e-9).unwrap().holds);
    }

    #[test]
    fn hermitian_part_equality_cases() {
        let x = M::from_complex_rows(&[&[(0.3, 1.0), (2.0, 0.0)], &[(-1.0, 0.5), (0.0, 0.7)]]).unwrap();
        let z = M::from_blocks(&[vec![M::zeros(2), M::zeros(2)], vec![x, M::zeros(2)]]).unwrap();
        let r = check_hermitian_part(&ConcaveFn::Sqrt, &z, 1e-9).unwrap();
        assert!(r.holds && r.per_k.iter().all(|row| row.margin.abs() < 1e-9), "{r:?}");

        let h = M::from_complex_rows(&[&[(1.0, 0.0), (0.3, -0.2)], &[(0.3, 0.2), (-0.5, 0.0)]]).unwrap();
        let id = ConcaveFn::Power { p: 1.0 };
        let r = check_hermitian_part(&id, &h, 1e-9).unwrap();
        assert!(r.per_k.iter().all(|row| row.margin.abs() < 1e-12));
    }

    #[test]
    fn identities_on_fixed_instance() {
        let f = ConcaveFn::piecewise_linear(vec![0.0, 0.5, 1.5], vec![0.3, 1.0, 1.4], 0.1).unwrap();
        let h = M::from_complex_rows(&[&[(1.0, 0.0), (0.3, -0.2)], &[(0.3, 0.2), (-0.5, 0.0)]]).unwrap();
        let r = check_abs_split_identity(&f, &h, 1e-10).unwrap();
        assert!(r.holds && r.per_k[0].lhs < 1e-13);
        let (a, b) = fixture();
        let r = check_shift_identity(&f, &a, &(-&b), 1e-10).unwrap();
        assert!(r.holds, "{r:?}");
    }

    #[test]
    fn dilation_doubles_spectrum() {
        let a = M::shift(3);
        let b = M::from_complex_rows(&[
            &[(0.0, 1.0), (1.0, 0.0), (0.0, 0.0)],
            &[(0.5, 0.0), (0.0, 0.0), (2.0, -1.0)],
            &[(0.0, 0.0), (0.0, 0.3), (1.0, 0.0)],
        ])
        .unwrap();
        let r = check_dilated_subadditivity(&ConcaveFn::Sqrt, &a, &b, 1e-9).unwrap();
        assert!(r.holds, "{r:?}");
        assert_eq!(r.dim, 6);
    }
}
