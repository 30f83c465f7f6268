use std::collections::HashMap;
use std::sync::Arc;

use ball::CBall;
use newforms::{block_wn_action, pseudo_eigenvalue, EmbeddedOrbit, PseudoEigenvalue};
use zlinalg::rational::inverse;

use crate::matrix::{ball_mul, qmat_to_balls};
use crate::{AlError, ZBasis};

/// Embeddings and pseudo-eigenvalues of one newform orbit.
#[derive(Clone, Debug)]
pub struct BlockNumerics {
    pub orbit: EmbeddedOrbit,
    pub lambdas: Vec<PseudoEigenvalue>,
}

/// Numerics for each block of the basis (shared between blocks of the same orbit).
pub fn block_numerics(basis: &ZBasis, prec: u32) -> Result<Vec<Arc<BlockNumerics>>, AlError> {
    let mut seen: HashMap<String, Arc<BlockNumerics>> = HashMap::new();
    let mut out = Vec::with_capacity(basis.blocks.len());
    for blk in &basis.blocks {
        if let Some(b) = seen.get(&blk.f.label) {
            out.push(b.clone());
            continue;
        }
        let orbit = EmbeddedOrbit::new(blk.f.clone(), prec)?;
        let lambdas = (0..orbit.degree())
            .map(|i| pseudo_eigenvalue(&orbit.embedding(i, blk.f.n_max), prec))
            .collect::<Result<Vec<_>, _>>()?;
        let b = Arc::new(BlockNumerics { orbit, lambdas });
        seen.insert(blk.f.label.clone(), b.clone());
        out.push(b);
    }
    Ok(out)
}

/// Ball approximation of `W` with `f_j | W_N = sum_k W_{jk} f_k`.
///
/// On a block, `W_N` acts on the embedded eigenbasis `E` by a known matrix
/// and the trace basis is `t = V E`, so `f | W_N = R V W_blk E`. Reading the
/// result at the pivot columns of `A` and multiplying by `A_P^-1` gives `W`.
pub fn numeric_w(basis: &ZBasis, nums: &[Arc<BlockNumerics>], prec: u32) -> Result<Vec<Vec<CBall>>, AlError> {
    let g = basis.dim();
    let wp = prec + 64;
    let mut f = vec![vec![CBall::zero(wp); g]; g];
    for (bi, blk) in basis.blocks.iter().enumerate() {
        let num = &nums[bi];
        let orbit = &num.orbit;
        let v = blk.trace_to_embedded(orbit);
        let wb = block_wn_action(blk, orbit, &num.lambdas);
        let deg = blk.degree();
        // embedded eigenforms at the pivot columns
        let e: Vec<Vec<CBall>> = blk
            .slots()
            .iter()
            .flat_map(|&s| {
                (0..deg).map(move |i| {
                    basis
                        .pivots
                        .iter()
                        .map(|&p| {
                            if p > 0 && p as u64 % s == 0 {
                                orbit.embed(i, blk.f.a(p / s as usize))
                            } else {
                                CBall::zero(wp)
                            }
                        })
                        .collect()
                })
            })
            .collect();
        let y = ball_mul(&ball_mul(&v, &wb, wp), &e, wp);
        let range = basis.block_range(bi);
        for (i, row) in f.iter_mut().enumerate() {
            for (jj, j) in range.clone().enumerate() {
                let r = &basis.r[(i, j)];
                if num_traits::Zero::is_zero(r) {
                    continue;
                }
                let rb = CBall::from_rational(r, wp);
                for (c, x) in row.iter_mut().enumerate() {
                    *x = x.add(&rb.mul(&y[jj][c]));
                }
            }
        }
    }
    let ap_inv = inverse(&basis.pivot_matrix().to_rational())?;
    Ok(ball_mul(&f, &qmat_to_balls(&ap_inv, wp), wp))
}
