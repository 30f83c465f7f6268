use std::ops::Range;

use newforms::{enumerate_blocks, EigenBlock, FixtureStore, UnitGroup};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use qexp::{sturm_bound, QExp, SturmBound};
use zlinalg::rational::inverse;
use zlinalg::{pivot_product, saturate_rows, IntMatrix, QMatrix};

use crate::AlError;

/// `S_k(Gamma)` for the group `Gamma` of matrices in `Gamma0(N)` whose lower
/// right entry lies in `H` modulo `N`.
#[derive(Clone, Debug)]
pub struct Space {
    pub level: u64,
    pub weight: u32,
    pub h: UnitGroup,
}

impl Space {
    pub fn new(level: u64, weight: u32, h: UnitGroup) -> Space {
        Space { level, weight, h }
    }

    /// `Gamma0(N) ∩ Gamma1(m)`.
    pub fn gamma0_gamma1(level: u64, weight: u32, m: u64) -> Space {
        Space::new(level, weight, UnitGroup::congruent_to_one(level, m))
    }

    pub fn sturm(&self) -> SturmBound {
        sturm_bound(self.weight, self.level)
    }
}

/// The integral `q`-expansions (terms `q^0 .. q^(len-1)`) of the trace
/// basis `Tr(a^j alpha_s f)` of a block.
pub fn trace_span(blk: &EigenBlock, len: usize) -> Result<Vec<QExp>, AlError> {
    let needed = (len - 1) / blk.d as usize;
    if needed > blk.f.n_max {
        return Err(AlError::InsufficientCoefficients { label: blk.f.label.clone(), needed, available: blk.f.n_max });
    }
    blk.trace_basis(len)
        .into_iter()
        .map(|row| {
            let c = row
                .iter()
                .map(|x| {
                    if x.is_integer() {
                        Ok(x.to_integer())
                    } else {
                        Err(AlError::NotIntegral(format!("{}: trace coefficient {x}", blk.f.label)))
                    }
                })
                .collect::<Result<Vec<BigInt>, _>>()?;
            Ok(QExp::from_bigints(1, blk.n, blk.weight(), &c))
        })
        .collect()
}

/// The saturation of a full-rank lattice of `q`-expansions, in HNF.
#[derive(Clone, Debug)]
pub struct Saturation {
    pub h: IntMatrix,
    pub pivots: Vec<usize>,
    /// Product of the pivots of `h`.
    pub alpha: BigInt,
}

pub fn saturate(spanning: &IntMatrix) -> Result<Saturation, AlError> {
    let h = saturate_rows(spanning);
    if h.rows() != spanning.rows() {
        return Err(AlError::RankDeficient { rank: h.rows(), expected: spanning.rows() });
    }
    let pivots = (0..h.rows()).map(|i| h.row(i).iter().position(|x| !x.is_zero()).unwrap()).collect();
    let alpha = pivot_product(&h)?;
    Ok(Saturation { h, pivots, alpha })
}

/// The distinguished basis `f_1, .., f_g` of `M(Z)`: rows of the HNF `A`
/// of the saturated trace lattice, known up to the Sturm bound.
#[derive(Clone, Debug)]
pub struct ZBasis {
    pub space: Space,
    pub sturm: SturmBound,
    pub blocks: Vec<EigenBlock>,
    /// First trace-basis row of each block.
    pub offsets: Vec<usize>,
    /// Trace basis `t_j` as rows, columns `q^0 .. q^s`.
    pub traces: IntMatrix,
    pub a: IntMatrix,
    pub pivots: Vec<usize>,
    pub alpha: BigInt,
    /// `f = R t`.
    pub r: QMatrix,
    pub r_inv: QMatrix,
}

impl ZBasis {
    pub fn build(space: &Space, store: &FixtureStore) -> Result<ZBasis, AlError> {
        let blocks = enumerate_blocks(space.level, space.weight, &space.h, store)?;
        let sturm = space.sturm();
        let len = sturm.s as usize + 1;
        let mut rows = Vec::new();
        let mut offsets = Vec::new();
        for blk in &blocks {
            offsets.push(rows.len());
            for f in trace_span(blk, len)? {
                rows.push(f.integer_coeffs().unwrap());
            }
        }
        let g = rows.len();
        let traces = if g == 0 { IntMatrix::zeros(0, len) } else { IntMatrix::from_rows(rows) };
        let sat = saturate(&traces)?;
        let ap = sat.h.select_cols(&sat.pivots).to_rational();
        let gp = traces.select_cols(&sat.pivots).to_rational();
        let (r, r_inv) = if g == 0 {
            (QMatrix::zeros(0, 0), QMatrix::zeros(0, 0))
        } else {
            (ap.mul(&inverse(&gp)?), gp.mul(&inverse(&ap)?))
        };
        debug_assert_eq!(r.mul(&traces.to_rational()), sat.h.to_rational());
        Ok(ZBasis {
            space: space.clone(),
            sturm,
            blocks,
            offsets,
            traces,
            a: sat.h,
            pivots: sat.pivots,
            alpha: sat.alpha,
            r,
            r_inv,
        })
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    /// Number of stored coefficients, `s + 1`.
    pub fn len(&self) -> usize {
        self.a.cols()
    }

    pub fn is_empty(&self) -> bool {
        self.dim() == 0
    }

    pub fn block_range(&self, i: usize) -> Range<usize> {
        self.offsets[i]..self.offsets[i] + self.blocks[i].dim()
    }

    pub fn forms(&self) -> Vec<QExp> {
        (0..self.dim()).map(|i| QExp::from_bigints(1, self.space.level, self.space.weight, self.a.row(i))).collect()
    }

    /// `A` restricted to its pivot columns: upper triangular with the pivots on the diagonal.
    pub fn pivot_matrix(&self) -> IntMatrix {
        self.a.select_cols(&self.pivots)
    }

    /// Coordinates over `f_1..f_g` of a form given by its coefficients at
    /// the pivot columns.
    pub fn coordinates(&self, at_pivots: &[BigRational]) -> Result<Vec<BigRational>, AlError> {
        let inv = inverse(&self.pivot_matrix().to_rational())?;
        Ok(inv.left_apply(at_pivots))
    }
}
