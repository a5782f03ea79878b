use std::cmp::Ordering;

use faer::Mat;
use nalgebra::{DMatrix, Schur, SymmetricEigen};
use num_complex::Complex64;

use super::predicates::{check_finite, normality_defect};
use super::ComplexMatrix;
use crate::error::{Error, Result};

/// Singular values in non-increasing order.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularValueList(Vec<f64>);

impl SingularValueList {
    /// Sorts descending and clamps rounding-level negatives to zero.
    pub fn from_unsorted(mut values: Vec<f64>) -> Self {
        for v in values.iter_mut() {
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        values.sort_by(|a, b| b.total_cmp(a));
        SingularValueList(values)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> f64 {
        self.0.first().copied().unwrap_or(0.0)
    }
}

#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub unitary: ComplexMatrix,
    pub eigenvalues: Vec<Complex64>,
}

impl SpectralDecomposition {
    /// `U·diag(λ)·U*`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let u = self.unitary.as_dmatrix();
        let d = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(self.eigenvalues.clone()));
        ComplexMatrix::wrap(u * d * u.adjoint())
    }
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues descending.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

fn to_faer(a: &ComplexMatrix) -> Mat<Complex64> {
    let m = a.as_dmatrix();
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Full SVD `A = W·diag(σ)·V*` with σ sorted descending; returns `(W, σ, V)`.
///
/// Exactly Hermitian inputs go through the Hermitian eigensolver
/// (`A = QΛQ*` gives `V = Q`, `σ = |λ|`, `W = Q·sign(Λ)`). Other inputs use
/// faer's SVD, retried on `A*` if it fails to converge, with nalgebra's SVD
/// as the last resort. nalgebra is not the first choice because its complex
/// SVD returns inaccurate singular vectors for some rank-deficient inputs.
pub(crate) fn svd_sorted(a: &ComplexMatrix) -> (DMatrix<Complex64>, Vec<f64>, DMatrix<Complex64>) {
    let n = a.dim();
    let (w, s, v) = svd_unsorted(a);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| s[j].total_cmp(&s[i]));
    let sigma: Vec<f64> = order.iter().map(|&i| s[i].max(0.0)).collect();
    let w = DMatrix::from_fn(n, n, |r, c| w[(r, order[c])]);
    let v = DMatrix::from_fn(n, n, |r, c| v[(r, order[c])]);
    (w, sigma, v)
}

fn from_faer(m: faer::MatRef<'_, Complex64>) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

fn svd_unsorted(a: &ComplexMatrix) -> (DMatrix<Complex64>, Vec<f64>, DMatrix<Complex64>) {
    let m = a.as_dmatrix();
    let f = to_faer(a);
    if m == &m.adjoint() {
        if let Ok(e) = f.self_adjoint_eigen(faer::Side::Lower) {
            let q = from_faer(e.U());
            let lambda: Vec<f64> = (0..a.dim()).map(|i| e.S().column_vector()[i].re).collect();
            let mut w = q.clone();
            for (j, l) in lambda.iter().enumerate() {
                if *l < 0.0 {
                    w.column_mut(j).neg_mut();
                }
            }
            return (w, lambda.iter().map(|l| l.abs()).collect(), q);
        }
    }
    let values = |s: faer::diag::DiagRef<'_, Complex64>| (0..a.dim()).map(|i| s.column_vector()[i].re).collect::<Vec<_>>();
    if let Ok(svd) = f.svd() {
        return (from_faer(svd.U()), values(svd.S()), from_faer(svd.V()));
    }
    if let Ok(svd) = f.adjoint().to_owned().svd() {
        return (from_faer(svd.V()), values(svd.S()), from_faer(svd.U()));
    }
    let svd = nalgebra::SVD::new(m.clone(), true, true);
    let v = svd.v_t.expect("requested V*").adjoint();
    (svd.u.expect("requested U"), svd.singular_values.iter().copied().collect(), v)
}

pub fn singular_values(a: &ComplexMatrix) -> SingularValueList {
    let values = match to_faer(a).singular_values() {
        Ok(v) => v,
        Err(_) => nalgebra::SVD::new(a.as_dmatrix().clone(), false, false).singular_values.iter().copied().collect(),
    };
    SingularValueList::from_unsorted(values)
}

/// Eigen-decomposition of a Hermitian matrix. The input is symmetrized first,
/// so rounding-level skew parts are discarded.
pub fn eigh(h: &ComplexMatrix) -> HermitianEigen {
    let n = h.dim();
    let m = h.as_dmatrix();
    let sym = (m + m.adjoint()).map(|z| z * 0.5);
    let e = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| e.eigenvalues[j].total_cmp(&e.eigenvalues[i]));
    HermitianEigen {
        eigenvalues: order.iter().map(|&i| e.eigenvalues[i]).collect(),
        eigenvectors: ComplexMatrix::wrap(DMatrix::from_fn(n, n, |r, c| e.eigenvectors[(r, order[c])])),
    }
}

/// Eigenvalues of a Hermitian matrix, descending.
pub fn hermitian_eigenvalues(h: &ComplexMatrix) -> Vec<f64> {
    let m = h.as_dmatrix();
    let sym = (m + m.adjoint()).map(|z| z * 0.5);
    let mut vals: Vec<f64> = SymmetricEigen::new(sym).eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| b.total_cmp(a));
    vals
}

/// Ordering for complex eigenvalues: modulus, then real part, then imaginary
/// part, all descending. Components closer than `eps` count as tied.
fn spectral_order(a: Complex64, b: Complex64, eps: f64) -> Ordering {
    let keys = [(a.norm(), b.norm()), (a.re, b.re), (a.im, b.im)];
    for (x, y) in keys {
        if (x - y).abs() > eps {
            return y.total_cmp(&x);
        }
    }
    Ordering::Equal
}

/// Unitary diagonalization of a normal matrix.
///
/// Eigenvalues come back ordered by [`spectral_order`]. The comparator is
/// tolerance-based and so not a total order; an insertion sort keeps the
/// result deterministic without relying on `sort_by`'s totality contract.
pub fn spectral_decompose(a: &ComplexMatrix, tol: f64) -> Result<SpectralDecomposition> {
    check_finite(a)?;
    let fro = a.frobenius_norm();
    let defect = normality_defect(a);
    if defect > tol * fro.powi(2).max(1.0) {
        return Err(Error::NotNormal { index: None, defect });
    }
    let n = a.dim();
    let (q, t) = Schur::new(a.as_dmatrix().clone()).unpack();
    let diag: Vec<Complex64> = (0..n).map(|i| t[(i, i)]).collect();
    let eps = 1e-12 * fro.max(1.0);
    let mut order: Vec<usize> = Vec::with_capacity(n);
    for i in 0..n {
        let pos = order
            .iter()
            .position(|&j| spectral_order(diag[i], diag[j], eps) == Ordering::Less)
            .unwrap_or(order.len());
        order.insert(pos, i);
    }
    let unitary = ComplexMatrix::wrap(DMatrix::from_fn(n, n, |r, c| q[(r, order[c])]));
    let eigenvalues = order.iter().map(|&i| diag[i]).collect();
    Ok(SpectralDecomposition { unitary, eigenvalues })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matcore::{c, is_unitary, TOL_RECON, TOL_UNITARY};

    fn assert_decomposes(a: &ComplexMatrix, sd: &SpectralDecomposition) {
        let n = a.dim();
        assert!(is_unitary(&sd.unitary, TOL_UNITARY * n as f64));
        let err = (&sd.reconstruct() - a).frobenius_norm();
        assert!(err <= TOL_RECON * a.frobenius_norm().max(1.0), "reconstruction error {err}");
    }

    #[test]
    fn diagonal_spectrum_sorted_descending() {
        let a = ComplexMatrix::diag_real(&[3.0, 1.0, 2.0]);
        let sd = spectral_decompose(&a, 1e-10).unwrap();
        let re: Vec<f64> = sd.eigenvalues.iter().map(|z| z.re).collect();
        assert_eq!(re, vec![3.0, 2.0, 1.0]);
        // permutation matrix: every entry has modulus 0 or 1
        for i in 0..3 {
            for j in 0..3 {
                let m = sd.unitary.get(i, j).norm();
                assert!(m < 1e-12 || (m - 1.0).abs() < 1e-12);
            }
        }
        assert_decomposes(&a, &sd);
    }

    #[test]
    fn rotation_generator_puts_plus_i_first() {
        let a = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[-1.0, 0.0]]).unwrap();
        let sd = spectral_decompose(&a, 1e-10).unwrap();
        assert!((sd.eigenvalues[0] - c(0.0, 1.0)).norm() < 1e-12);
        assert!((sd.eigenvalues[1] - c(0.0, -1.0)).norm() < 1e-12);
        assert_decomposes(&a, &sd);
    }

    #[test]
    fn difference_of_fixture_pair_has_spectrum_pm_half_sqrt2() {
        // characteristic polynomial t^2 - 1/2
        let d = ComplexMatrix::from_real_rows(&[&[0.5, -0.5], &[-0.5, -0.5]]).unwrap();
        let sd = spectral_decompose(&d, 1e-10).unwrap();
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((sd.eigenvalues[0] - c(h, 0.0)).norm() < 1e-12);
        assert!((sd.eigenvalues[1] - c(-h, 0.0)).norm() < 1e-12);
        assert_decomposes(&d, &sd);
    }

    #[test]
    fn non_normal_reports_defect() {
        let j = ComplexMatrix::shift(2);
        match spectral_decompose(&j, 1e-10) {
            Err(Error::NotNormal { defect, .. }) => assert!((defect - 2f64.sqrt()).abs() < 1e-12),
            other => panic!("expected NotNormal, got {other:?}"),
        }
    }

    #[test]
    fn singular_value_oracles() {
        let z = ComplexMatrix::shift(3);
        let sv = singular_values(&z);
        for (got, want) in sv.as_slice().iter().zip([1.0, 1.0, 0.0]) {
            assert!((got - want).abs() < 1e-14);
        }
        // |A|+|B| of the fixture pair: trace 2, det 1/2
        let s = ComplexMatrix::from_real_rows(&[&[1.5, 0.5], &[0.5, 0.5]]).unwrap();
        let sv = singular_values(&s);
        let h = std::f64::consts::FRAC_1_SQRT_2;
        assert!((sv.as_slice()[0] - (1.0 + h)).abs() < 1e-14);
        assert!((sv.as_slice()[1] - (1.0 - h)).abs() < 1e-14);
        assert_eq!(singular_values(&ComplexMatrix::zeros(4)).as_slice(), &[0.0; 4]);
    }

    #[test]
    fn eigh_matches_hand_spectrum_of_path_graph() {
        let z = ComplexMatrix::shift(3);
        let p = &z + &z.adjoint();
        let e = eigh(&p);
        let r2 = 2f64.sqrt();
        for (got, want) in e.eigenvalues.iter().zip([r2, 0.0, -r2]) {
            assert!((got - want).abs() < 1e-14);
        }
    }
}
