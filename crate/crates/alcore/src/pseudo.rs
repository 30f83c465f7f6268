use ball::{Ball, CBall};
use cyclo::{CycMatrix, CycNum};
use newforms::EmbeddedOrbit;
use num_bigint::BigInt;

use crate::{ALMatrix, AlError};

/// `c` with `sigma_i(f) | W_N = c_i sigma_i(f)bar` for a newform `f` of level `N`.
///
/// On the trace basis of the orbit, `W_N` acts by an exact matrix `C` over
/// `Q(zeta_Q)`, and `c_i = sum_l C_{0l} sigma_i(a)bar^l`; `c` is described
/// exactly by the row `C_0` and evaluated at every embedding.
#[derive(Clone, Debug)]
pub struct ExactPseudoEigenvalue {
    pub label: String,
    pub matrix: CycMatrix,
    /// `c` as a polynomial in the conjugate of the field generator.
    pub poly: Vec<CycNum>,
    /// `c_i` for each embedding.
    pub values: Vec<CBall>,
    /// `lambda_N(sigma_i f) = (-1)^k c_i / N^(k/2)`.
    pub lambdas: Vec<CBall>,
}

impl ExactPseudoEigenvalue {
    /// `c` itself when the field of the newform is `Q`.
    pub fn rational_field_value(&self) -> Option<&CycNum> {
        (self.poly.len() == 1).then(|| &self.poly[0])
    }
}

pub fn exact_pseudo_eigenvalue(al: &ALMatrix, label: &str, prec: u32) -> Result<ExactPseudoEigenvalue, AlError> {
    let basis = &al.basis;
    let n = al.level();
    let k = al.weight();
    let q = al.conductor();
    let bi = basis
        .blocks
        .iter()
        .position(|b| b.m == n && b.f.label == label)
        .ok_or_else(|| AlError::NotInSpace(label.into()))?;
    let blk = &basis.blocks[bi];
    let range = basis.block_range(bi);
    let g = basis.dim();
    // W on the trace basis is R^-1 W R
    let rinv = CycMatrix::from_rational(&basis.r_inv.select_rows(&range.clone().collect::<Vec<_>>()), q);
    let r = CycMatrix::from_rational(&basis.r, q);
    let wt = rinv.mul(&al.w).mul(&r);
    for i in 0..wt.rows() {
        for j in 0..g {
            if !range.contains(&j) && !wt.get(i, j).is_zero() {
                return Err(AlError::Inconsistent(format!("{label}: W does not preserve the orbit")));
            }
        }
    }
    let deg = blk.degree();
    let c = CycMatrix::from_fn(deg, deg, q, |i, j| wt.get(i, range.start + j).clone());
    let sign = if k % 2 == 0 { 1 } else { -1 };
    let nk = CycNum::from_int(BigInt::from(n).pow(k) * sign);
    let c2 = c.mul(&c);
    let scalar_ok = (0..deg).all(|i| (0..deg).all(|j| c2.get(i, j) == &if i == j { nk.clone() } else { CycNum::zero() }));
    if !scalar_ok {
        return Err(AlError::Inconsistent(format!("{label}: C^2 != (-1)^k N^k")));
    }

    let orbit = EmbeddedOrbit::new(blk.f.clone(), prec)?;
    let wp = prec + 64;
    let entries: Vec<Vec<CBall>> = (0..deg).map(|i| (0..deg).map(|j| c.get(i, j).embed(wp)).collect()).collect();
    let nk_abs = Ball::from_bigint(BigInt::from(n).pow(k), wp);
    let sqrt_nk = Ball::from_int(n as i64, wp).sqrt().unwrap().pow(k as u64);
    let mut values = Vec::with_capacity(deg);
    let mut lambdas = Vec::with_capacity(deg);
    for i in 0..deg {
        let rc = &orbit.roots[orbit.conj[i]];
        let eval = |j: usize| (0..deg).fold(CBall::zero(wp), |acc, l| acc.add(&entries[j][l].mul(&rc.pow(l as u64))));
        let ci = eval(0);
        for j in 1..deg {
            if !eval(j).overlaps(&orbit.roots[i].pow(j as u64).mul(&ci)) {
                return Err(AlError::Inconsistent(format!("{label}: trace-basis action is not diagonal in embedding {i}")));
            }
        }
        if !ci.abs_sqr().overlaps(&nk_abs) {
            return Err(AlError::Inconsistent(format!("{label}: |c_{i}|^2 != N^k")));
        }
        let lam = ci.mul_int(&BigInt::from(sign));
        lambdas.push(CBall::new(lam.re.div(&sqrt_nk).unwrap(), lam.im.div(&sqrt_nk).unwrap()));
        values.push(ci);
    }
    Ok(ExactPseudoEigenvalue { label: label.into(), poly: c.row(0).to_vec(), matrix: c, values, lambdas })
}
