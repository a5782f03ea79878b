use super::{require_psd, require_same_dim, sv, CheckResult};
use crate::concave::ConcaveFn;
use crate::error::Result;
use crate::matcore::{apply_fn_abs, direct_sum, eigh, matrix_abs, ComplexMatrix};
use crate::norms::majorization_from_spectra;

/// If `A ≺_w X` and `B ≺_w Y` then `A⊕B ≺_w X⊕Y`.
///
/// When either hypothesis fails the result is marked skipped.
pub fn check_direct_sum_majorization(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    x: &ComplexMatrix,
    y: &ComplexMatrix,
    tol: f64,
) -> Result<CheckResult> {
    require_psd(&[a, b, x, y])?;
    require_same_dim(&[a, x])?;
    require_same_dim(&[b, y])?;
    let dim = a.dim() + b.dim();
    if !majorization_from_spectra(&sv(a), &sv(x), tol).holds {
        return Ok(CheckResult::skipped("direct-sum-majorization", dim, "A is not weakly majorized by X"));
    }
    if !majorization_from_spectra(&sv(b), &sv(y), tol).holds {
        return Ok(CheckResult::skipped("direct-sum-majorization", dim, "B is not weakly majorized by Y"));
    }
    let lhs = direct_sum(a, b);
    let rhs = direct_sum(x, y);
    Ok(CheckResult::ky_fan("direct-sum-majorization", &sv(&lhs), &sv(&rhs), tol))
}

/// `A⊕B ≺_w (A+B)⊕0` for PSD `A, B`, together with the unitary congruence
/// `[[A, A^½B^½], [B^½A^½, B]] ≃ (A+B)⊕0` behind it, checked as equality of
/// singular values (rows with claim `congruence (<=)` / `(>=)`).
pub fn check_sum_compression(a: &ComplexMatrix, b: &ComplexMatrix, tol: f64) -> Result<CheckResult> {
    require_psd(&[a, b])?;
    let n = require_same_dim(&[a, b])?;
    let sum = direct_sum(&(a + b), &ComplexMatrix::zeros(n));
    let left = direct_sum(a, b);
    let mut out = CheckResult::ky_fan("sum-compression", &sv(&left), &sv(&sum), tol);
    let ra = apply_fn_abs(&ConcaveFn::Sqrt, a)?;
    let rb = apply_fn_abs(&ConcaveFn::Sqrt, b)?;
    let grid = ComplexMatrix::from_blocks(&[vec![a.clone(), &ra * &rb], vec![&rb * &ra, b.clone()]])?;
    out.push_ky_fan_equality("congruence", &sv(&grid), &sv(&sum));
    Ok(out.finish())
}

/// `λ_j(|X−Y|) ≤ λ_j(X⊕Y)` for `j = 1..n`, PSD `X, Y`.
pub fn check_abs_diff_dominance(x: &ComplexMatrix, y: &ComplexMatrix, tol: f64) -> Result<CheckResult> {
    require_psd(&[x, y])?;
    require_same_dim(&[x, y])?;
    let lhs = eigh(&matrix_abs(&(x - y))?).eigenvalues;
    let rhs = eigh(&direct_sum(x, y)).eigenvalues;
    Ok(CheckResult::pointwise("abs_diff_dominance", &lhs, &rhs[..lhs.len()], tol))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::matcore::ComplexMatrix as M;

    fn p() -> M {
        M::from_complex_rows(&[&[(2.0, 0.0), (0.5, 0.5)], &[(0.5, -0.5), (1.0, 0.0)]]).unwrap()
    }

    fn q() -> M {
        M::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap()
    }

    #[test]
    fn direct_sum_equal_and_scaled() {
        let r = check_direct_sum_majorization(&p(), &q(), &p(), &q(), 1e-9).unwrap();
        assert!(r.holds && r.per_k.iter().all(|row| row.margin.abs() < 1e-12));
        let r = check_direct_sum_majorization(&p().scale(0.5), &q().scale(0.5), &p(), &q(), 1e-9).unwrap();
        assert!(r.holds && !r.is_skipped());
        for row in &r.per_k {
            assert!((row.rhs - 2.0 * row.lhs).abs() < 1e-12);
        }
    }

    #[test]
    fn vacuous_direct_sum_is_skipped() {
        let r = check_direct_sum_majorization(&p(), &q(), &q(), &q(), 1e-9).unwrap();
        assert!(r.is_skipped());
        let err = check_direct_sum_majorization(&M::diag_real(&[1.0, -1.0]), &q(), &p(), &q(), 1e-9).unwrap_err();
        assert!(matches!(err, Error::NotPsd { index: Some(0), .. }));
    }

    #[test]
    fn sum_compression_hand_cases() {
        let one = M::identity(1);
        let r = check_sum_compression(&one, &one, 1e-9).unwrap();
        assert!(r.holds);
        let k1 = r.row(1, None).unwrap();
        let k2 = r.row(2, None).unwrap();
        assert_eq!((k1.lhs, k1.rhs), (1.0, 2.0));
        assert!((k2.lhs - 2.0).abs() < 1e-15 && (k2.rhs - 2.0).abs() < 1e-15);

        let r = check_sum_compression(&p(), &M::zeros(2), 1e-9).unwrap();
        assert!(r.holds && r.per_k.iter().all(|row| row.margin.abs() < 1e-12));

        let r = check_sum_compression(&p(), &q(), 1e-9).unwrap();
        assert!(r.holds);
        assert!(r.per_k.iter().filter(|row| row.claim.is_some()).all(|row| row.margin.abs() < 1e-10));
    }

    #[test]
    fn abs_diff_cases() {
        let r = check_abs_diff_dominance(&p(), &M::zeros(2), 1e-9).unwrap();
        assert!(r.holds && r.per_k.iter().all(|row| row.margin.abs() < 1e-12));
        let r = check_abs_diff_dominance(&p(), &p(), 1e-9).unwrap();
        assert!(r.holds && r.per_k.iter().all(|row| row.lhs.abs() < 1e-14));
        let r = check_abs_diff_dominance(&p(), &q(), 1e-9).unwrap();
        assert!(r.holds && r.per_k.len() == 2);
    }
}
