//! The registry of randomized suites, one per inequality.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::gen::{
    gen_concave, gen_contractive_family, gen_e_convex, gen_expansive, gen_general, gen_hermitian, gen_normal, gen_psd,
};
use super::FunctionSpec;
use crate::concave::{is_e_convex, log_grid, AffineConcave, ConcaveFn};
use crate::error::Result;
use crate::matcore::{pos_neg_parts, ComplexMatrix};
use crate::theorems::{self, BlockMode, CheckResult, CongruenceScope, PRECONDITION_TOL};

/// Magnitude of generated spectra.
const SCALE: f64 = 2.0;
/// Kink range of generated piecewise-linear functions.
const FN_SCALE: f64 = 3.0;

pub type TrialFn = fn(&mut ChaCha8Rng, usize, &FunctionSpec, f64) -> Result<CheckResult>;

pub struct Suite {
    pub id: &'static str,
    pub summary: &'static str,
    pub run: TrialFn,
}

fn concave(rng: &mut ChaCha8Rng, spec: &FunctionSpec) -> ConcaveFn {
    match spec {
        FunctionSpec::Random => gen_concave(rng, FN_SCALE),
        FunctionSpec::Fixed(f) => f.clone(),
    }
}

fn normals(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Vec<ComplexMatrix> {
    (0..m)
        .map(|_| {
            let real = rng.random_bool(0.3);
            gen_normal(rng, n, SCALE, real)
        })
        .collect()
}

fn subadditivity_psd(rng: &mut ChaCha8Rng, n: usize, spec: &FunctionSpec, tol: f64) -> Result<CheckResult> {
    let f = concave(rng, spec);
    let ops = vec![gen_psd(rng, n, SCALE), gen_psd(rng, n, SCALE)];
    Ok(theorems::check_subadditivity(&f, &ops, tol)?.named("subadditivity-psd"))
}

fn subadditivity_normal(rng: &mut ChaCha8Rng, n: usize, spec: &FunctionSpec, tol: f64) -> Result<CheckResult> {
    let f = concave(rng, spec);
    let ops = normals(rng, n, 2);
    Ok(theorems::check_subadditivity(&f, &ops, tol)?.named("subadditivity-normal"))
}

fn subadditivity_m3(rng: &mut ChaCha8Rng, n: usize, spec: &FunctionSpec, tol: f64) -> Result<CheckResult> {
    let f = concave(rng, spec);
    let ops = normals(rng, n, 3);
    Ok(theorems::check_subadditivity(&f, &ops, tol)?.named("subadditivity-normal-m3"))
}

fn e_convex_intermediate(rng: &mut ChaCha8Rng, n: usize, spec: &FunctionSpec, tol: f64) -> Result<CheckResult> {
    let f = match spec {
        FunctionSpec::Random => gen_e_convex(rng),
        FunctionSpec::Fixed(f) => f.clone(),
    };
    if !is_e_convex(&f, &log_grid(-8.0, 4.0), 1e-9)? {
        return Ok(CheckResult::skipped("e-convex-intermediate", n, "function is not e-convex"));
    }
    let ops = normals(rng, n, 2);
    Ok(theorems::check_intermediate(&f, &ops[0], &ops[1], tol)?.named("e-convex-intermediate"))
}

fn dilation(rng: &mut ChaCha8Rng, n: usize, spec: &FunctionSpec, tol: f64) -> Result<CheckResult> {
    let f = concave(rng, spec);
    let a = gen_general(rng, n, 1.0);
    let b = gen_general(rng, n, 1.0);
    theorems::check_dilated_subadditivity(&f, &a, &b, tol)
}

fn cartesian(rng: &mut ChaCha8Rng, n: usize, spec: &FunctionSpec, tol: f64) -> Result<CheckResult> {
    let f = concave(rng, spec);
    Ok(theorems::check_cartesian(&f, &gen_general(rng, n, 1.0), tol)?)
}

fn hermitian_part(rng: &mut ChaCha8Rng, n: usize, spec: &FunctionSpec, tol: f64) -> Result<CheckResult> {
    let f = concave(rng, spec);
    Ok(theorems::check_hermitian_part(&f, &gen_general(rng, n, 1.0), tol)?.named("hermitian-part"))
}

fn block_normal(m: usize, rng: &mut ChaCha8Rng, n: usize, spec: &FunctionSpec, tol: f64) -> Result<CheckResult> {
    let f = concave(rng, spec);
    let grid: Vec<Vec<ComplexMatrix>> = (0..m).map(|_| normals(rng, n, m)).collect();
    theorems::check_block_subadditivity(&f, &grid, BlockMode::NormalBlocks, tol)
}

fn block_normal_2(rng: &mut ChaCha8Rng, n: usize, spec: &FunctionSpec, tol: f64) -> Result<CheckResult> {
    Ok(block_normal(2, rng, n, spec, tol)?.named("block-normal"))
}

fn block_normal_3(rng: &mut ChaCha8Rng, n: usize, spec: &FunctionSpec, tol: f64) -> Result<CheckResult> {
    Ok(block_normal(3, rng, n, spec, tol)?.named("block-normal-3x3"))
}

fn block_triangular(rng: &mut ChaCha8Rng, n: usize, spec: &FunctionSpec, tol: f64) -> Result<CheckResult> {
    let f = concave(rng, spec);
    let a = gen_general(rng, n, 1.0);
    let b = gen_general(rng, n, 1.0);
    let nn = gen_normal(rng, n, SCALE, false);
    let grid = vec![vec![a, nn], vec![ComplexMatrix::zeros(n), b]];
    Ok(theorems::check_block_subadditivity(&f, &grid, BlockMode::TriangularN, tol)?.named("block-triangular"))
}

fn hermitian_grid(rng: &mut ChaCha8Rng, n: usize, m: usize) -> Vec<Vec<ComplexMatrix>> {
    let mut grid = vec![vec![ComplexMatrix::zeros(n); m]; m];
    for i in 0..m {
        grid[i][i] = gen_hermitian(rng, n, SCALE);
        for j in i + 1..m {
            let b = gen_general(rng, n, 1.0);
            grid[j][i] = b.adjoint();
            grid[i][j] = b;
        }
    }
    grid
}

fn block_hermitian_2(rng: &mut ChaCha8Rng, n: usize, spec: &FunctionSpec, tol: f64) -> Result<CheckResult> {
    let f = concave(rng, spec);
    let grid = hermitian_grid(rng, n, 2);
    Ok(theorems::check_block_subadditivity(&f, &grid, BlockMode::HermitianFull, tol)?.named("block-hermitian-2x2"))
}

fn block_hermitian_3(rng: &mut ChaCha8Rng, n: usize, spec: &FunctionSpec, tol: f64) -> Result<CheckResult> {
    let f = concave(rng, spec);
    let grid = hermitian_grid(rng, n, 3);
    Ok(theorems::check_block_subadditivity(&f, &grid, BlockMode::HermitianFull, tol)?.named("block-hermitian"))
}

fn psd_noise(rng: &mut ChaCha8Rng, a: &ComplexMatrix) -> ComplexMatrix {
    a + &gen_psd(rng, a.dim(), 0.5)
}

fn direct_sum_majorization(rng: &mut ChaCha8Rng, n: usize, _: &FunctionSpec, tol: f64) -> Result<CheckResult> {
    let a = gen_psd(rng, n, SCALE);
    let b = gen_psd(rng, n, SCALE);
    // one trial in four draws unrelated dominating pairs, which may be vacuous
    let (x, y) = if rng.random_bool(0.25) {
        (gen_psd(rng, n, SCALE), gen_psd(rng, n, SCALE))
    } else {
        (psd_noise(rng, &a), psd_noise(rng, &b))
    };
    theorems::check_direct_sum_majorization(&a, &b, &x, &y, tol)
}

fn sum_compression(rng: &mut ChaCha8Rng, n: usize, _: &FunctionSpec, tol: f64) -> Result<CheckResult> {
    let a = gen_psd(rng, n, SCALE);
    let b = gen_psd(rng, n, SCALE);
    theorems::check_sum_compression(&a, &b, tol)
}

fn abs_diff(rng: &mut ChaCha8Rng, n: usize, _: &FunctionSpec, tol: f64) -> Result<CheckResult> {
    let (x, y) = if rng.random_bool(0.5) {
        let (ap, am) = pos_neg_parts(&gen_hermitian(rng, n, SCALE), PRECONDITION_TOL)?;
        let (bp, bm) = pos_neg_parts(&gen_hermitian(rng, n, SCALE), PRECONDITION_TOL)?;
        (&ap + &bp, &am + &bm)
    } else {
        (gen_psd(rng, n, SCALE), gen_psd(rng, n, SCALE))
    };
    Ok(theorems::check_abs_diff_dominance(&x, &y, tol)?.named("abs-diff-dominance"))
}

fn abs_split(rng: &mut ChaCha8Rng, n: usize, spec: &FunctionSpec, tol: f64) -> Result<CheckResult> {
    let f = concave(rng, spec);
    Ok(theorems::check_abs_split_identity(&f, &gen_hermitian(rng, n, SCALE), tol)?.named("abs-split-identity"))
}

fn shift(rng: &mut ChaCha8Rng, n: usize, spec: &FunctionSpec, tol: f64) -> Result<CheckResult> {
    let f = concave(rng, spec);
    let a = gen_hermitian(rng, n, SCALE);
    let b = gen_hermitian(rng, n, SCALE);
    Ok(theorems::check_shift_identity(&f, &a, &b, tol)?.named("shift-identity"))
}

fn expansive(rng: &mut ChaCha8Rng) -> f64 {
    [0.0, 0.1, 0.5, 1.0][rng.random_range(0..4)]
}

fn congruence_psd(rng: &mut ChaCha8Rng, n: usize, spec: &FunctionSpec, tol: f64) -> Result<CheckResult> {
    let f = concave(rng, spec);
    let a = gen_psd(rng, n, SCALE);
    let spread = expansive(rng);
    let z = gen_expansive(rng, n, spread);
    Ok(theorems::check_expansive_congruence(&f, &[a], &[z], CongruenceScope::AllNorms, None, tol)?
        .named("expansive-congruence-psd"))
}

fn congruence_normal(rng: &mut ChaCha8Rng, n: usize, spec: &FunctionSpec, tol: f64) -> Result<CheckResult> {
    let f = concave(rng, spec);
    let ops = normals(rng, n, 1);
    let spread = expansive(rng);
    let z = gen_expansive(rng, n, spread);
    Ok(theorems::check_expansive_congruence(&f, &ops, &[z], CongruenceScope::AllNorms, None, tol)?
        .named("expansive-congruence"))
}

fn affine_slope(rng: &mut ChaCha8Rng) -> f64 {
    if rng.random_bool(0.2) {
        0.0
    } else {
        rng.random_range(-1.5..1.5)
    }
}

fn trace_congruence(rng: &mut ChaCha8Rng, n: usize, spec: &FunctionSpec, tol: f64) -> Result<CheckResult> {
    let g = concave(rng, spec);
    let slope = affine_slope(rng);
    let a = gen_psd(rng, n, SCALE);
    let spread = expansive(rng);
    let z = gen_expansive(rng, n, spread);
    Ok(theorems::check_expansive_congruence(&g, &[a], &[z], CongruenceScope::TraceOnly, Some(slope), tol)?
        .named("trace-congruence"))
}

fn multi_congruence(rng: &mut ChaCha8Rng, n: usize, spec: &FunctionSpec, tol: f64) -> Result<CheckResult> {
    let f = concave(rng, spec);
    let ops = normals(rng, n, 2);
    let zs: Vec<ComplexMatrix> = (0..2)
        .map(|_| {
            let spread = expansive(rng);
            gen_expansive(rng, n, spread)
        })
        .collect();
    Ok(theorems::check_expansive_congruence(&f, &ops, &zs, CongruenceScope::AllNorms, None, tol)?
        .named("multi-congruence"))
}

fn rotfeld(rng: &mut ChaCha8Rng, n: usize, spec: &FunctionSpec, tol: f64) -> Result<CheckResult> {
    let g = concave(rng, spec);
    let h = AffineConcave::new(g, affine_slope(rng))?;
    let ops = vec![gen_psd(rng, n, SCALE), gen_psd(rng, n, SCALE)];
    theorems::check_rotfeld(&h, &ops, tol)
}

/// Every trial checks the three exponents 1.5, 2 and 3 on one draw; the
/// rows of each exponent carry the claim `p=<p>`.
fn convex_reverse(rng: &mut ChaCha8Rng, n: usize, _: &FunctionSpec, tol: f64) -> Result<CheckResult> {
    let m = rng.random_range(1..=2);
    let ops: Vec<ComplexMatrix> = (0..m).map(|_| gen_psd(rng, n, SCALE)).collect();
    let zs: Vec<ComplexMatrix> = (0..m)
        .map(|_| {
            let spread = expansive(rng);
            gen_expansive(rng, n, spread)
        })
        .collect();
    let mut out = CheckResult::new("convex-reverse", n, tol);
    for p in [1.5, 2.0, 3.0] {
        let r = theorems::check_convex_reverse(&ops, &zs, p, tol)?;
        let claim = format!("p={p}");
        for row in r.per_k {
            out.push_row(row.k, row.lhs, row.rhs, Some(&claim));
        }
    }
    Ok(out.finish().with_meta("m", m))
}

fn contractive_jensen(rng: &mut ChaCha8Rng, n: usize, spec: &FunctionSpec, tol: f64) -> Result<CheckResult> {
    let f = concave(rng, spec);
    let m = rng.random_range(1..=3);
    let ops: Vec<ComplexMatrix> = (0..m).map(|_| gen_psd(rng, n, SCALE)).collect();
    let scale = if rng.random_bool(0.3) { 1.0 } else { rng.random_range(0.2..1.0) };
    let zs = gen_contractive_family(rng, n, m, scale);
    Ok(theorems::check_contractive_jensen(&f, &ops, &zs, tol)?.named("contractive-jensen"))
}

pub static SUITES: &[Suite] = &[
    Suite {
        id: "subadditivity-psd",
        summary: "PSD A, B: ‖f(A+B)‖ ≤ ‖f(A)+f(B)‖",
        run: subadditivity_psd,
    },
    Suite {
        id: "subadditivity-normal",
        summary: "normal A, B: ‖f(|A+B|)‖ ≤ ‖f(|A|)+f(|B|)‖",
        run: subadditivity_normal,
    },
    Suite {
        id: "subadditivity-normal-m3",
        summary: "three normal operands: ‖f(|A₁+A₂+A₃|)‖ ≤ ‖Σ f(|A_i|)‖",
        run: subadditivity_m3,
    },
    Suite {
        id: "e-convex-intermediate",
        summary: "normal A, B, f(e^t) convex: ‖f(|A+B|)‖ ≤ ‖f(|A|+|B|)‖",
        run: e_convex_intermediate,
    },
    Suite {
        id: "dilation",
        summary: "general A, B through Hermitian dilations, with the doubled spectrum",
        run: dilation,
    },
    Suite {
        id: "cartesian",
        summary: "Z = A+iB: ‖f(|Z|)‖ ≤ ‖f(|A|)+f(|B|)‖",
        run: cartesian,
    },
    Suite {
        id: "hermitian-part",
        summary: "‖f(|Z+Z*|)‖ ≤ ‖f(|Z|)+f(|Z*|)‖",
        run: hermitian_part,
    },
    Suite {
        id: "block-normal",
        summary: "2×2 grid of normal blocks: ‖f(|𝔸|)‖ ≤ ‖Σ f(|A_ij|)‖",
        run: block_normal_2,
    },
    Suite {
        id: "block-normal-3x3",
        summary: "3×3 grid of normal blocks: ‖f(|𝔸|)‖ ≤ ‖Σ f(|A_ij|)‖",
        run: block_normal_3,
    },
    Suite {
        id: "block-triangular",
        summary: "[[A, N], [0, B]], N normal: ‖f(|𝕋|)‖ ≤ ‖f(|A*|)+f(|N|)+f(|B|)‖",
        run: block_triangular,
    },
    Suite {
        id: "block-hermitian-2x2",
        summary: "[[A, B], [B*, C]] Hermitian: ‖f(|𝔸|)‖ ≤ ‖f(|A|)+f(|B|)+f(|B*|)+f(|C|)‖",
        run: block_hermitian_2,
    },
    Suite {
        id: "block-hermitian",
        summary: "Hermitian 3×3 block partition: ‖f(|𝔸|)‖ ≤ ‖Σ f(|A_ij|)‖",
        run: block_hermitian_3,
    },
    Suite {
        id: "direct-sum-majorization",
        summary: "A ≺w X and B ≺w Y imply A⊕B ≺w X⊕Y",
        run: direct_sum_majorization,
    },
    Suite {
        id: "sum-compression",
        summary: "A⊕B ≺w (A+B)⊕0, and [[A, A½B½], [B½A½, B]] ≃ (A+B)⊕0",
        run: sum_compression,
    },
    Suite {
        id: "abs-diff-dominance",
        summary: "PSD X, Y: λ_j(|X−Y|) ≤ λ_j(X⊕Y)",
        run: abs_diff,
    },
    Suite {
        id: "abs-split-identity",
        summary: "Hermitian H: g(|H|) = g(H₊)+g(H₋) for g = f − f(0)",
        run: abs_split,
    },
    Suite {
        id: "shift-identity",
        summary: "‖f(|X|)‖_(k) = k·f(0) + ‖g(|X|)‖_(k) on both sides of subadditivity",
        run: shift,
    },
    Suite {
        id: "expansive-congruence-psd",
        summary: "A ≥ 0, Z*Z ≥ I: ‖f(Z*AZ)‖ ≤ ‖Z*f(A)Z‖",
        run: congruence_psd,
    },
    Suite {
        id: "expansive-congruence",
        summary: "A normal, Z*Z ≥ I: ‖f(|Z*AZ|)‖ ≤ ‖Z*f(|A|)Z‖",
        run: congruence_normal,
    },
    Suite {
        id: "trace-congruence",
        summary: "A ≥ 0, Z*Z ≥ I, f = g + a·t: Tr f(|Z*AZ|) ≤ Tr Z*f(|A|)Z",
        run: trace_congruence,
    },
    Suite {
        id: "multi-congruence",
        summary: "two normal A_i, expansive Z_i: ‖f(|Σ Z_i*A_iZ_i|)‖ ≤ ‖Σ Z_i*f(|A_i|)Z_i‖",
        run: multi_congruence,
    },
    Suite {
        id: "rotfeld",
        summary: "PSD A, B, f = g + a·t: Tr f(A+B) ≤ Tr f(A) + Tr f(B)",
        run: rotfeld,
    },
    Suite {
        id: "convex-reverse",
        summary: "A_i ≥ 0, Z_i expansive, p ∈ {1.5, 2, 3}: ‖Σ Z_i*A_i^pZ_i‖ ≤ ‖(Σ Z_i*A_iZ_i)^p‖",
        run: convex_reverse,
    },
    Suite {
        id: "contractive-jensen",
        summary: "A_i ≥ 0, Σ Z_i*Z_i ≤ I: λ_j(Σ Z_i*f(A_i)Z_i) ≤ λ_j(f(Σ Z_i*A_iZ_i))",
        run: contractive_jensen,
    },
];

pub fn find(id: &str) -> Option<&'static Suite> {
    SUITES.iter().find(|s| s.id == id)
}
