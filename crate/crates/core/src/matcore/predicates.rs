use super::decomp::hermitian_eigenvalues;
use super::ComplexMatrix;
use crate::error::{Error, Result};

pub(crate) fn check_finite(a: &ComplexMatrix) -> Result<()> {
    let m = a.as_dmatrix();
    for c in 0..m.ncols() {
        for r in 0..m.nrows() {
            let z = m[(r, c)];
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(Error::NonFinite { row: r, col: c });
            }
        }
    }
    Ok(())
}

fn check_tol(tol: f64) -> Result<()> {
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be non-negative, got {tol}")));
    }
    Ok(())
}

pub(crate) fn hermitian_defect(a: &ComplexMatrix) -> f64 {
    (a - &a.adjoint()).frobenius_norm()
}

/// `‖AA* − A*A‖_F`.
pub fn normality_defect(a: &ComplexMatrix) -> f64 {
    let m = a.as_dmatrix();
    (m * m.adjoint() - m.adjoint() * m).norm()
}

pub fn is_hermitian(a: &ComplexMatrix, tol: f64) -> Result<bool> {
    check_finite(a)?;
    check_tol(tol)?;
    Ok(hermitian_defect(a) <= tol * a.frobenius_norm().max(1.0))
}

pub fn is_normal(a: &ComplexMatrix, tol: f64) -> Result<bool> {
    check_finite(a)?;
    check_tol(tol)?;
    Ok(normality_defect(a) <= tol * a.frobenius_norm().powi(2).max(1.0))
}

/// Smallest eigenvalue of the Hermitian part of `a`.
pub fn min_eigenvalue(a: &ComplexMatrix) -> f64 {
    *hermitian_eigenvalues(a).last().expect("dimension is positive")
}

pub fn is_psd(a: &ComplexMatrix, tol: f64) -> Result<bool> {
    if !is_hermitian(a, tol)? {
        return Ok(false);
    }
    let vals = hermitian_eigenvalues(a);
    let op = vals.iter().map(|v| v.abs()).fold(0.0, f64::max);
    Ok(*vals.last().unwrap() >= -tol * op.max(1.0))
}

pub(crate) fn expansive_margin(z: &ComplexMatrix) -> f64 {
    let n = z.dim();
    let g = &ComplexMatrix::identity(n).congruence(z) - &ComplexMatrix::identity(n);
    min_eigenvalue(&g)
}

/// `Z*Z ≥ I` up to `tol`.
pub fn is_expansive(z: &ComplexMatrix, tol: f64) -> Result<bool> {
    check_finite(z)?;
    check_tol(tol)?;
    Ok(expansive_margin(z) >= -tol)
}

pub(crate) fn contractive_excess(zs: &[ComplexMatrix]) -> Result<f64> {
    let first = zs.first().ok_or_else(|| Error::InvalidArgument("empty family".into()))?;
    let n = first.dim();
    let mut acc = ComplexMatrix::zeros(n);
    for z in zs {
        if z.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, got: z.dim() });
        }
        check_finite(z)?;
        acc = &acc + &ComplexMatrix::identity(n).congruence(z);
    }
    Ok(hermitian_eigenvalues(&acc)[0])
}

/// `Σ Z_i*Z_i ≤ I` up to `tol`.
pub fn is_contractive_family(zs: &[ComplexMatrix], tol: f64) -> Result<bool> {
    check_tol(tol)?;
    Ok(contractive_excess(zs)? <= 1.0 + tol)
}

/// `‖U*U − I‖_F ≤ tol`.
pub fn is_unitary(u: &ComplexMatrix, tol: f64) -> bool {
    let n = u.dim();
    (&(&u.adjoint() * u) - &ComplexMatrix::identity(n)).frobenius_norm() <= tol
}
