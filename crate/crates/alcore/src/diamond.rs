use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use zlinalg::numth::{divisors, gcd_u64};
use zlinalg::hnf::is_unimodular;
use zlinalg::{IntMatrix, QMatrix};

use crate::{AlError, ZBasis};

/// `<d>` on the trace basis, one block at a time.
pub fn trace_diamond(basis: &ZBasis, m: u64) -> Result<QMatrix, AlError> {
    let g = basis.dim();
    let mut out = QMatrix::from_fn(g, g, |_, _| BigRational::zero());
    for (i, blk) in basis.blocks.iter().enumerate() {
        let d = newforms::block_diamond_action(blk, m)?;
        let r = basis.block_range(i);
        for a in 0..d.rows() {
            for b in 0..d.cols() {
                out[(r.start + a, r.start + b)] = d[(a, b)].clone();
            }
        }
    }
    Ok(out)
}

/// `D_m` with `f_j | <m> = sum_k (D_m)_{jk} f_k`.
pub fn diamond_matrix(basis: &ZBasis, m: u64) -> Result<IntMatrix, AlError> {
    let d = basis.r.mul(&trace_diamond(basis, m)?).mul(&basis.r_inv);
    if !d.is_integral() {
        return Err(AlError::NotIntegral(format!("D_{m} has a non-integral entry")));
    }
    let d = d.map(|x| x.to_integer());
    if !is_unimodular(&d) {
        return Err(AlError::Inconsistent(format!("D_{m} is not unimodular")));
    }
    Ok(d)
}

fn units(n: u64) -> impl Iterator<Item = u64> {
    (1..=n).filter(move |&x| gcd_u64(x, n) == 1).map(move |x| x % n)
}

/// Smallest `Q | N` such that `<d>` only depends on `d mod Q`, i.e. every
/// block character is trivial on `{d = 1 mod Q}`.
pub fn conductor_q(basis: &ZBasis) -> u64 {
    let n = basis.space.level;
    divisors(n)
        .into_iter()
        .find(|&q| {
            units(n).filter(|d| d % q == 1 % q).all(|d| {
                basis.blocks.iter().all(|b| b.f.eps(d % b.m).is_some_and(|v| *v == b.f.field.one()))
            })
        })
        .unwrap()
}

/// The diamond matrices `D_d`, `d ∈ (Z/QZ)^*`.
#[derive(Clone, Debug)]
pub struct DiamondRep {
    pub n: u64,
    pub q: u64,
    pub mats: BTreeMap<u64, IntMatrix>,
}

impl DiamondRep {
    /// `D_d` for any `d` prime to `Q`.
    pub fn get(&self, d: i64) -> &IntMatrix {
        &self.mats[&(d.rem_euclid(self.q as i64) as u64)]
    }

    /// Residues `d mod Q` in increasing order.
    pub fn residues(&self) -> impl Iterator<Item = u64> + '_ {
        self.mats.keys().copied()
    }

    /// A set of residues generating `(Z/QZ)^*`.
    pub fn generators(&self) -> Vec<u64> {
        let q = self.q;
        let mut gens = Vec::new();
        let mut reached = std::collections::BTreeSet::from([1 % q]);
        for d in self.residues() {
            if reached.contains(&d) {
                continue;
            }
            gens.push(d);
            let mut frontier: Vec<u64> = reached.iter().copied().collect();
            while let Some(x) = frontier.pop() {
                for &g in &gens {
                    let y = x * g % q;
                    if reached.insert(y) {
                        frontier.push(y);
                    }
                }
            }
        }
        gens
    }
}

/// Smallest `x ≡ d mod Q` with `x` prime to `N`.
fn lift_unit(d: u64, q: u64, n: u64) -> u64 {
    (0..n).map(|t| d + t * q).find(|&x| gcd_u64(x, n) == 1).expect("units lift")
}

pub fn diamond_matrices(basis: &ZBasis) -> Result<DiamondRep, AlError> {
    let n = basis.space.level;
    let q = conductor_q(basis);
    let mut mats = BTreeMap::new();
    for d in units(q) {
        mats.insert(d, diamond_matrix(basis, lift_unit(d, q, n))?);
    }
    let rep = DiamondRep { n, q, mats };
    if !rep.get(1).is_identity() {
        return Err(AlError::Inconsistent("D_1 is not the identity".into()));
    }
    for a in rep.residues() {
        for b in rep.residues() {
            if &rep.get(a as i64).mul(rep.get(b as i64)) != rep.get((a * b % q) as i64) {
                return Err(AlError::Inconsistent(format!("D_{a} D_{b} != D_{}", a * b % q)));
            }
        }
    }
    Ok(rep)
}
