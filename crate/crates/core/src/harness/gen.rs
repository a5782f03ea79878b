//! Random operands for the suites. Each generator draws from an explicit
//! RNG so a trial is fully determined by its seed stream.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::concave::{random_concave, ConcaveFn};
use crate::matcore::ComplexMatrix;

/// The seed stream of trial `index` under master seed `seed`: a ChaCha8
/// generator keyed by `seed` on stream `index`, so every trial can be
/// regenerated on its own.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn normal<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    StandardNormal.sample(rng)
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R, n: usize) -> DMatrix<Complex64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    DMatrix::from_fn(n, n, |_, _| Complex64::new(normal(rng) * s, normal(rng) * s))
}

/// Complex Ginibre matrix with entries of unit variance, times `scale`.
pub fn gen_general<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> ComplexMatrix {
    ComplexMatrix::wrap(gaussian(rng, n).map(|z| z * scale))
}

/// Haar unitary: QR of a Ginibre matrix with the phases of `diag(R)`
/// moved into `Q`.
pub fn gen_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> ComplexMatrix {
    let qr = gaussian(rng, n).qr();
    let (mut q, r) = qr.unpack();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    ComplexMatrix::wrap(q)
}

fn conjugate_diag(u: &ComplexMatrix, d: Vec<Complex64>) -> ComplexMatrix {
    let u = u.as_dmatrix();
    ComplexMatrix::wrap(u * DMatrix::from_diagonal(&DVector::from_vec(d)) * u.adjoint())
}

/// `U·diag(λ)·U*` with `U` Haar and `λ` uniform in the disk of radius
/// `spectrum_scale`, or uniform on `[−scale, scale]` when `real` is set.
pub fn gen_normal<R: Rng + ?Sized>(rng: &mut R, n: usize, spectrum_scale: f64, real: bool) -> ComplexMatrix {
    let u = gen_unitary(rng, n);
    let eig = (0..n)
        .map(|_| {
            if real {
                Complex64::new(spectrum_scale * rng.random_range(-1.0..=1.0), 0.0)
            } else {
                let r = spectrum_scale * rng.random::<f64>().sqrt();
                Complex64::from_polar(r, rng.random_range(0.0..std::f64::consts::TAU))
            }
        })
        .collect();
    let mut a = conjugate_diag(&u, eig);
    if real {
        a = a.hermitian_part();
    }
    a
}

pub fn gen_hermitian<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> ComplexMatrix {
    gen_normal(rng, n, scale, true)
}

/// `U·diag(μ)·U*` with `μ_j ∈ [0, scale]`. About one draw in five is rank
/// deficient.
pub fn gen_psd<R: Rng + ?Sized>(rng: &mut R, n: usize, scale: f64) -> ComplexMatrix {
    let u = gen_unitary(rng, n);
    let deficient = rng.random_bool(0.2);
    let eig = (0..n)
        .map(|j| {
            if deficient && j == 0 {
                Complex64::new(0.0, 0.0)
            } else {
                Complex64::new(scale * rng.random::<f64>(), 0.0)
            }
        })
        .collect();
    conjugate_diag(&u, eig).hermitian_part()
}

/// `U·diag(1 + |x_j|)·V*` with `x_j ~ N(0, spread²)`.
pub fn gen_expansive<R: Rng + ?Sized>(rng: &mut R, n: usize, spread: f64) -> ComplexMatrix {
    let u = gen_unitary(rng, n);
    let v = gen_unitary(rng, n);
    let d: Vec<Complex64> = (0..n).map(|_| Complex64::new(1.0 + (spread * normal(rng)).abs(), 0.0)).collect();
    let d = DMatrix::from_diagonal(&DVector::from_vec(d));
    ComplexMatrix::wrap(u.as_dmatrix() * d * v.as_dmatrix().adjoint())
}

/// `m` matrices `Z_i = scale·V_i·C` where `V_1, …, V_m` are the `n×n` row
/// blocks of the first `n` columns of a Haar unitary on `C^{mn}` and `C` is
/// a random contraction, so `Σ Z_i*Z_i = scale²·C*C ≤ I`.
pub fn gen_contractive_family<R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize, scale: f64) -> Vec<ComplexMatrix> {
    let big = gen_unitary(rng, n * m);
    let c = {
        let u = gen_unitary(rng, n);
        let v = gen_unitary(rng, n);
        let d: Vec<Complex64> = (0..n).map(|_| Complex64::new(rng.random_range(0.0..=1.0), 0.0)).collect();
        u.as_dmatrix() * DMatrix::from_diagonal(&DVector::from_vec(d)) * v.as_dmatrix().adjoint()
    };
    (0..m)
        .map(|i| {
            let block = big.as_dmatrix().view((i * n, 0), (n, n)).into_owned();
            ComplexMatrix::wrap(block * &c * Complex64::new(scale, 0.0))
        })
        .collect()
}

/// A random function from the non-negative concave class: mostly random
/// piecewise-linear functions, with powers, caps, square roots and affine
/// functions mixed in.
pub fn gen_concave<R: Rng + ?Sized>(rng: &mut R, scale: f64) -> ConcaveFn {
    match rng.random_range(0..10) {
        0..=4 => random_concave(rng, 4, scale),
        5 => ConcaveFn::Power { p: rng.random_range(0.05..=1.0) },
        6 => ConcaveFn::MinCap { c: scale * rng.random_range(0.05..1.0) },
        7 => ConcaveFn::Sqrt,
        8 => ConcaveFn::Affine { a: rng.random_range(0.0..2.0), b: rng.random_range(0.0..1.0) },
        _ => random_concave(rng, 1, scale),
    }
}

/// A random non-negative concave function with `t ↦ f(e^t)` convex: powers
/// `t^p` with `0 < p ≤ 1`, the square root and non-negative affine maps.
pub fn gen_e_convex<R: Rng + ?Sized>(rng: &mut R) -> ConcaveFn {
    match rng.random_range(0..4) {
        0 | 1 => ConcaveFn::Power { p: rng.random_range(0.05..=1.0) },
        2 => ConcaveFn::Sqrt,
        _ => ConcaveFn::Affine { a: rng.random_range(0.0..2.0), b: rng.random_range(0.0..1.0) },
    }
}
