//! Dense complex matrices and the spectral machinery the inequality checks
//! are built from.
//!
//! [`ComplexMatrix`] is a thin newtype over a square `nalgebra` matrix of
//! `Complex64`. Every constructor rejects non-finite entries, so downstream
//! code never has to re-check.

mod decomp;
mod ops;
mod predicates;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use decomp::{eigh, singular_values, spectral_decompose, HermitianEigen, SingularValueList, SpectralDecomposition};
pub use ops::{apply_fn_abs, direct_sum, hermitian_dilation, matrix_abs, polar_factors, pos_neg_parts, PolarSide};
pub use predicates::{
    is_contractive_family, is_expansive, is_hermitian, is_normal, is_psd, is_unitary, min_eigenvalue,
    normality_defect,
};

/// Unitarity tolerance (scaled by the dimension).
pub const TOL_UNITARY: f64 = 1e-10;
/// Relative reconstruction tolerance for decompositions.
pub const TOL_RECON: f64 = 1e-9;
/// Default tolerance for the structural predicates.
pub const TOL_STRUCT: f64 = 1e-10;
/// Largest dimension accepted from external input.
pub const MAX_DIM: usize = 64;

#[derive(Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<Complex64>);

impl ComplexMatrix {
    /// Wraps an nalgebra matrix, checking squareness and finiteness.
    pub fn from_dmatrix(m: DMatrix<Complex64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::Malformed(format!("{}x{} is not square", m.nrows(), m.ncols())));
        }
        if m.nrows() == 0 {
            return Err(Error::Malformed("dimension must be positive".into()));
        }
        for c in 0..m.ncols() {
            for r in 0..m.nrows() {
                let z = m[(r, c)];
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite { row: r, col: c });
                }
            }
        }
        Ok(ComplexMatrix(m))
    }

    /// Internal constructor for results of arithmetic on finite matrices.
    pub(crate) fn wrap(m: DMatrix<Complex64>) -> Self {
        debug_assert_eq!(m.nrows(), m.ncols());
        ComplexMatrix(m)
    }

    /// Builds a matrix from row-major real and imaginary parts, enforcing [`MAX_DIM`].
    pub fn from_parts(re: &[Vec<f64>], im: &[Vec<f64>]) -> Result<Self> {
        let n = re.len();
        if n > MAX_DIM {
            return Err(Error::DimensionTooLarge { dim: n, max: MAX_DIM });
        }
        if im.len() != n {
            return Err(Error::Malformed(format!("re has {} rows but im has {}", n, im.len())));
        }
        for (i, (r, c)) in re.iter().zip(im).enumerate() {
            if r.len() != n || c.len() != n {
                return Err(Error::Malformed(format!("row {i} does not have {n} entries")));
            }
        }
        Self::from_dmatrix(DMatrix::from_fn(n, n, |i, j| Complex64::new(re[i][j], im[i][j])))
    }

    /// Real matrix from row-major rows.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let re: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
        let im: Vec<Vec<f64>> = re.iter().map(|r| vec![0.0; r.len()]).collect();
        Self::from_parts(&re, &im)
    }

    /// Complex matrix from row-major rows of `(re, im)` pairs.
    pub fn from_complex_rows(rows: &[&[(f64, f64)]]) -> Result<Self> {
        let re: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(|z| z.0).collect()).collect();
        let im: Vec<Vec<f64>> = rows.iter().map(|r| r.iter().map(|z| z.1).collect()).collect();
        Self::from_parts(&re, &im)
    }

    pub fn zeros(n: usize) -> Self {
        ComplexMatrix(DMatrix::zeros(n, n))
    }

    pub fn identity(n: usize) -> Self {
        ComplexMatrix(DMatrix::identity(n, n))
    }

    pub fn diag_real(values: &[f64]) -> Self {
        let n = values.len();
        ComplexMatrix(DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(values[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    pub fn diag_complex(values: &[Complex64]) -> Self {
        let n = values.len();
        ComplexMatrix(DMatrix::from_fn(n, n, |i, j| if i == j { values[i] } else { Complex64::new(0.0, 0.0) }))
    }

    /// The `n`-dimensional shift with ones on the first superdiagonal.
    pub fn shift(n: usize) -> Self {
        ComplexMatrix(DMatrix::from_fn(n, n, |i, j| {
            if j == i + 1 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[(row, col)]
    }

    pub fn as_dmatrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn into_dmatrix(self) -> DMatrix<Complex64> {
        self.0
    }

    pub fn adjoint(&self) -> Self {
        ComplexMatrix(self.0.adjoint())
    }

    pub fn scale(&self, s: f64) -> Self {
        ComplexMatrix(self.0.map(|z| z * s))
    }

    pub fn scale_complex(&self, s: Complex64) -> Self {
        ComplexMatrix(self.0.map(|z| z * s))
    }

    /// `Z* self Z`.
    pub fn congruence(&self, z: &ComplexMatrix) -> Self {
        ComplexMatrix(z.0.adjoint() * &self.0 * &z.0)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    /// `(A + A*)/2`.
    pub fn hermitian_part(&self) -> Self {
        ComplexMatrix((&self.0 + self.0.adjoint()).map(|z| z * 0.5))
    }

    /// `(A - A*)/(2i)`, Hermitian, so that `A = re + i·im`.
    pub fn skew_part(&self) -> Self {
        let half_i = Complex64::new(0.0, -0.5);
        ComplexMatrix((&self.0 - self.0.adjoint()).map(|z| z * half_i))
    }

    /// Largest entrywise modulus difference.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        (&self.0 - &other.0).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Assembles an `m×m` grid of equally sized square blocks.
    pub fn from_blocks(blocks: &[Vec<ComplexMatrix>]) -> Result<Self> {
        let m = blocks.len();
        if m == 0 {
            return Err(Error::Malformed("empty block grid".into()));
        }
        let n = blocks[0].first().map(|b| b.dim()).ok_or_else(|| Error::Malformed("empty block row".into()))?;
        for (i, row) in blocks.iter().enumerate() {
            if row.len() != m {
                return Err(Error::Malformed(format!("block row {i} has {} blocks, expected {m}", row.len())));
            }
            for b in row {
                if b.dim() != n {
                    return Err(Error::DimensionMismatch { expected: n, got: b.dim() });
                }
            }
        }
        let mut out = DMatrix::zeros(m * n, m * n);
        for (i, row) in blocks.iter().enumerate() {
            for (j, b) in row.iter().enumerate() {
                out.view_mut((i * n, j * n), (n, n)).copy_from(&b.0);
            }
        }
        Ok(ComplexMatrix(out))
    }

    /// Extracts block `(i, j)` of size `n` from a partitioned matrix.
    pub fn block(&self, i: usize, j: usize, n: usize) -> Self {
        ComplexMatrix(self.0.view((i * n, j * n), (n, n)).into_owned())
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix({}x{})", self.dim(), self.dim())?;
        for i in 0..self.dim() {
            let row: Vec<String> = (0..self.dim())
                .map(|j| {
                    let z = self.0[(i, j)];
                    format!("{:+.6}{:+.6}i", z.re, z.im)
                })
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&ComplexMatrix> for &ComplexMatrix {
            type Output = ComplexMatrix;
            fn $method(self, rhs: &ComplexMatrix) -> ComplexMatrix {
                ComplexMatrix(&self.0 $op &rhs.0)
            }
        }
        impl $trait<ComplexMatrix> for ComplexMatrix {
            type Output = ComplexMatrix;
            fn $method(self, rhs: ComplexMatrix) -> ComplexMatrix {
                ComplexMatrix(self.0 $op rhs.0)
            }
        }
    };
}

forward_binop!(Add, add, +);
forward_binop!(Sub, sub, -);
forward_binop!(Mul, mul, *);

impl Neg for &ComplexMatrix {
    type Output = ComplexMatrix;
    fn neg(self) -> ComplexMatrix {
        ComplexMatrix(-&self.0)
    }
}

/// Sum of a non-empty list of equally sized matrices.
pub fn sum(terms: &[ComplexMatrix]) -> Result<ComplexMatrix> {
    let first = terms.first().ok_or_else(|| Error::InvalidArgument("empty operand list".into()))?;
    let n = first.dim();
    let mut acc = first.0.clone();
    for t in &terms[1..] {
        if t.dim() != n {
            return Err(Error::DimensionMismatch { expected: n, got: t.dim() });
        }
        acc += &t.0;
    }
    Ok(ComplexMatrix(acc))
}

/// JSON matrix literal: `{ "dim": n, "re": [[...]], "im": [[...]] }`, row-major.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixLiteral {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl TryFrom<MatrixLiteral> for ComplexMatrix {
    type Error = Error;
    fn try_from(lit: MatrixLiteral) -> Result<Self> {
        if lit.re.len() != lit.dim {
            return Err(Error::Malformed(format!("dim is {} but {} rows were given", lit.dim, lit.re.len())));
        }
        ComplexMatrix::from_parts(&lit.re, &lit.im)
    }
}

impl From<&ComplexMatrix> for MatrixLiteral {
    fn from(m: &ComplexMatrix) -> Self {
        let n = m.dim();
        MatrixLiteral {
            dim: n,
            re: (0..n).map(|i| (0..n).map(|j| m.0[(i, j)].re).collect()).collect(),
            im: (0..n).map(|i| (0..n).map(|j| m.0[(i, j)].im).collect()).collect(),
        }
    }
}

impl Serialize for ComplexMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixLiteral::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for ComplexMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let lit = MatrixLiteral::deserialize(d)?;
        ComplexMatrix::try_from(lit).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}
