use super::{require_non_negative_concave, sv, CheckResult, PRECONDITION_TOL};
use crate::concave::ConcaveFn;
use crate::error::{Error, Result};
use crate::matcore::{self, apply_fn_abs, is_normal, polar_factors, ComplexMatrix, PolarSide};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockMode {
    /// Every block is normal.
    NormalBlocks,
    /// The assembled matrix is Hermitian; blocks are arbitrary.
    HermitianFull,
    /// `[[A, N], [0, B]]` with `N` normal.
    TriangularN,
}

impl BlockMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            BlockMode::NormalBlocks => "normal_blocks",
            BlockMode::HermitianFull => "hermitian_full",
            BlockMode::TriangularN => "triangular_N",
        }
    }
}

fn grid_shape(blocks: &[Vec<ComplexMatrix>]) -> Result<(usize, usize)> {
    let m = blocks.len();
    if m == 0 || blocks.iter().any(|r| r.len() != m) {
        return Err(Error::Malformed("block grid must be square and non-empty".into()));
    }
    Ok((m, blocks[0][0].dim()))
}

/// Splits the Hermitian dilation `[[0, 𝔸], [𝔸*, 0]]` of an `m×m` block
/// matrix into `m` Hermitian summands. Summand `r` is the dilation of the
/// matrix holding only the blocks `(i, (i + r) mod m)`, so each block row and
/// block column of it has at most one nonzero block.
pub fn dilation_pattern_split(blocks: &[Vec<ComplexMatrix>]) -> Result<Vec<ComplexMatrix>> {
    let (m, n) = grid_shape(blocks)?;
    (0..m)
        .map(|r| {
            let pattern: Vec<Vec<ComplexMatrix>> = (0..m)
                .map(|i| {
                    (0..m)
                        .map(|j| if j == (i + r) % m { blocks[i][j].clone() } else { ComplexMatrix::zeros(n) })
                        .collect()
                })
                .collect();
            let p = ComplexMatrix::from_blocks(&pattern)?;
            Ok(upper_dilation(&p))
        })
        .collect()
}

/// `[[0, X], [X*, 0]]`.
fn upper_dilation(x: &ComplexMatrix) -> ComplexMatrix {
    matcore::hermitian_dilation(&x.adjoint())
}

fn check_mode(blocks: &[Vec<ComplexMatrix>], mode: BlockMode, full: &ComplexMatrix) -> Result<()> {
    let (m, n) = grid_shape(blocks)?;
    match mode {
        BlockMode::NormalBlocks => {
            for (i, row) in blocks.iter().enumerate() {
                for (j, b) in row.iter().enumerate() {
                    if !is_normal(b, PRECONDITION_TOL)? {
                        return Err(Error::Block { row: i, col: j, reason: "block is not normal".into() });
                    }
                }
            }
        }
        BlockMode::HermitianFull => {
            let scale = full.frobenius_norm().max(1.0);
            for i in 0..m {
                for j in i..m {
                    let d = blocks[i][j].max_abs_diff(&blocks[j][i].adjoint());
                    if d > PRECONDITION_TOL * scale {
                        return Err(Error::Block {
                            row: i,
                            col: j,
                            reason: format!("block differs from adjoint of block ({j}, {i}) by {d:e}"),
                        });
                    }
                }
            }
        }
        BlockMode::TriangularN => {
            if m != 2 {
                return Err(Error::Block { row: 0, col: 0, reason: format!("triangular mode needs a 2x2 grid, got {m}x{m}") });
            }
            let ll = blocks[1][0].max_abs_diff(&ComplexMatrix::zeros(n));
            if ll > PRECONDITION_TOL * full.frobenius_norm().max(1.0) {
                return Err(Error::Block { row: 1, col: 0, reason: "lower-left block must vanish".into() });
            }
            if !is_normal(&blocks[0][1], PRECONDITION_TOL)? {
                return Err(Error::Block { row: 0, col: 1, reason: "upper-right block is not normal".into() });
            }
        }
    }
    Ok(())
}

/// `‖f(|𝔸|)‖ ≤ ‖Σ f(|A_{i,j}|)‖` for a block matrix under one of the three
/// block hypotheses. The left side lives on the full space and the right on
/// the block space; the comparison zero-pads the latter.
///
/// Besides the primary rows, the result carries two supporting claims that
/// hold for any block matrix:
/// - `split`: `f(|𝔸̃|) ≺_w Σ_r f(|S̃_r|)` for the dilation split of
///   [`dilation_pattern_split`];
/// - `doubled`: `f(|𝔸|) ⊕ f(|𝔸|) ≺_w Σ f(|A_{i,j}^*|) ⊕ Σ f(|A_{i,j}|)`.
///
/// In triangular mode the right side is `f(|A*|) + f(|N|) + f(|B|)` and the
/// supporting claim is that `[[A, N], [0, B]]` and `[[|A*|, N], [0, |B|]]`
/// share singular values.
pub fn check_block_subadditivity(
    f: &ConcaveFn,
    blocks: &[Vec<ComplexMatrix>],
    mode: BlockMode,
    tol: f64,
) -> Result<CheckResult> {
    require_non_negative_concave(f)?;
    let full = ComplexMatrix::from_blocks(blocks)?;
    check_mode(blocks, mode, &full)?;
    let (m, n) = grid_shape(blocks)?;
    let lhs = apply_fn_abs(f, &full)?;
    let lhs_sv = sv(&lhs);

    let name = match mode {
        BlockMode::NormalBlocks => "block_normal",
        BlockMode::HermitianFull => "block_hermitian",
        BlockMode::TriangularN => "block_triangular",
    };

    let mut out = if mode == BlockMode::TriangularN {
        let (a, nn, b) = (&blocks[0][0], &blocks[0][1], &blocks[1][1]);
        let rhs = matcore::sum(&[apply_fn_abs(f, &a.adjoint())?, apply_fn_abs(f, nn)?, apply_fn_abs(f, b)?])?;
        let mut out = CheckResult::ky_fan(name, &lhs_sv, &sv(&rhs), tol);
        let (abs_adj, _) = polar_factors(a, PolarSide::Left)?;
        let (_, abs_b) = polar_factors(b, PolarSide::Right)?;
        let reduced = ComplexMatrix::from_blocks(&[vec![abs_adj, nn.clone()], vec![ComplexMatrix::zeros(n), abs_b]])?;
        out.push_ky_fan_equality("polar congruence", &sv(&full), &sv(&reduced));
        out
    } else {
        let mut direct = Vec::with_capacity(m * m);
        let mut adjoint = Vec::with_capacity(m * m);
        for row in blocks {
            for blk in row {
                direct.push(apply_fn_abs(f, blk)?);
                adjoint.push(apply_fn_abs(f, &blk.adjoint())?);
            }
        }
        let rhs = matcore::sum(&direct)?;
        let mut out = CheckResult::ky_fan(name, &lhs_sv, &sv(&rhs), tol);

        let pieces = dilation_pattern_split(blocks)?;
        let dil = upper_dilation(&full);
        let split_lhs = sv(&apply_fn_abs(f, &dil)?);
        let split_terms = pieces.iter().map(|p| apply_fn_abs(f, p)).collect::<Result<Vec<_>>>()?;
        out.push_ky_fan(Some("split"), &split_lhs, &sv(&matcore::sum(&split_terms)?));

        let doubled_lhs = matcore::direct_sum(&lhs, &lhs);
        let doubled_rhs = matcore::direct_sum(&matcore::sum(&adjoint)?, &rhs);
        out.push_ky_fan(Some("doubled"), &sv(&doubled_lhs), &sv(&doubled_rhs));
        out
    };
    out = out.finish();
    Ok(out.with_meta("f", f).with_meta("mode", mode.as_str()).with_meta("blocks", m))
}
