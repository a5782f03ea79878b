use nalgebra::DMatrix;
use num_complex::Complex64;

use super::decomp::{eigh, svd_sorted};
use super::predicates::{check_finite, hermitian_defect};
use super::ComplexMatrix;
use crate::concave::RealFn;
use crate::error::{Error, Result};

/// `V·diag(σ)·V*` for the right singular vectors `V`.
fn weighted_projector(v: &DMatrix<Complex64>, weights: &[f64]) -> DMatrix<Complex64> {
    let n = v.nrows();
    let mut scaled = v.clone();
    for (j, w) in weights.iter().enumerate() {
        for i in 0..n {
            scaled[(i, j)] *= *w;
        }
    }
    let out = scaled * v.adjoint();
    (&out + out.adjoint()).map(|z| z * 0.5)
}

/// `|A| = (A*A)^{1/2}` via the SVD.
pub fn matrix_abs(a: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_finite(a)?;
    let (_, sigma, v) = svd_sorted(a);
    Ok(ComplexMatrix::wrap(weighted_projector(&v, &sigma)))
}

/// `f(|A|) = V·f(Σ)·V*` where `A = WΣV*`.
///
/// Singular values below `n·ε·σ_max` are treated as exact zeros before `f` is
/// applied; otherwise functions with infinite slope at 0 (square roots,
/// small powers) would amplify rounding noise in the null space.
pub fn apply_fn_abs<F: RealFn + ?Sized>(f: &F, a: &ComplexMatrix) -> Result<ComplexMatrix> {
    check_finite(a)?;
    let n = a.dim();
    let (_, sigma, v) = svd_sorted(a);
    let floor = n as f64 * f64::EPSILON * sigma[0];
    let mut vals = Vec::with_capacity(n);
    for &s in &sigma {
        let t = if s <= floor { 0.0 } else { s };
        let y = f.call(t)?;
        if !y.is_finite() {
            return Err(Error::Domain(format!("function value at {t} is not finite")));
        }
        vals.push(y);
    }
    Ok(ComplexMatrix::wrap(weighted_projector(&v, &vals)))
}

/// Positive and negative parts `(H₊, H₋)` of a Hermitian matrix.
pub fn pos_neg_parts(h: &ComplexMatrix, tol: f64) -> Result<(ComplexMatrix, ComplexMatrix)> {
    check_finite(h)?;
    let defect = hermitian_defect(h);
    if defect > tol * h.frobenius_norm().max(1.0) {
        return Err(Error::NotHermitian { index: None, defect });
    }
    let e = eigh(h);
    let u = e.eigenvectors.as_dmatrix();
    let pos: Vec<f64> = e.eigenvalues.iter().map(|&l| l.max(0.0)).collect();
    let neg: Vec<f64> = e.eigenvalues.iter().map(|&l| (-l).max(0.0)).collect();
    Ok((ComplexMatrix::wrap(weighted_projector(u, &pos)), ComplexMatrix::wrap(weighted_projector(u, &neg))))
}

/// `[[0, A*], [A, 0]]`.
pub fn hermitian_dilation(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.dim();
    let mut out = DMatrix::zeros(2 * n, 2 * n);
    out.view_mut((0, n), (n, n)).copy_from(&a.as_dmatrix().adjoint());
    out.view_mut((n, 0), (n, n)).copy_from(a.as_dmatrix());
    ComplexMatrix::wrap(out)
}

/// `A ⊕ B`, block diagonal.
pub fn direct_sum(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let (n, m) = (a.dim(), b.dim());
    let mut out = DMatrix::zeros(n + m, n + m);
    out.view_mut((0, 0), (n, n)).copy_from(a.as_dmatrix());
    out.view_mut((n, n), (m, m)).copy_from(b.as_dmatrix());
    ComplexMatrix::wrap(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolarSide {
    /// `A = |A*|·U`
    Left,
    /// `A = V·|A|`
    Right,
}

/// Polar factors of `A`. For [`PolarSide::Left`] returns `(|A*|, U)`, for
/// [`PolarSide::Right`] returns `(V, |A|)`. The unitary factor is `W·V*` from a
/// full SVD, so it is unitary even when `A` is singular.
pub fn polar_factors(a: &ComplexMatrix, side: PolarSide) -> Result<(ComplexMatrix, ComplexMatrix)> {
    check_finite(a)?;
    let (w, sigma, v) = svd_sorted(a);
    let unitary = ComplexMatrix::wrap(&w * v.adjoint());
    Ok(match side {
        PolarSide::Left => (ComplexMatrix::wrap(weighted_projector(&w, &sigma)), unitary),
        PolarSide::Right => (unitary, ComplexMatrix::wrap(weighted_projector(&v, &sigma))),
    })
}
