use std::collections::BTreeSet;
use std::sync::Arc;

use ball::{Ball, CBall};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use zlinalg::numth::{divisors, gcd_u64};
use zlinalg::QMatrix;

use crate::{EmbeddedOrbit, FixtureStore, NewformError, NewformRecord, PseudoEigenvalue};

/// A subgroup `H` of `(Z/NZ)^*`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitGroup {
    pub modulus: u64,
    elems: BTreeSet<u64>,
}

impl UnitGroup {
    /// The subgroup generated by `gens`.
    pub fn generated(modulus: u64, gens: &[u64]) -> UnitGroup {
        let mut elems = BTreeSet::from([1 % modulus]);
        let mut frontier = vec![1 % modulus];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = x * (g % modulus) % modulus;
                if elems.insert(y) {
                    frontier.push(y);
                }
            }
        }
        UnitGroup { modulus, elems }
    }

    /// `{h : h = 1 mod m}`, the group attached to `Gamma0(N) cap Gamma1(m)`.
    pub fn congruent_to_one(modulus: u64, m: u64) -> UnitGroup {
        let m = gcd_u64(m, modulus);
        let elems = (0..modulus).filter(|&h| gcd_u64(h, modulus) == 1 && h % m == 1 % m).map(|h| h % modulus).collect();
        UnitGroup { modulus, elems }
    }

    pub fn contains(&self, h: u64) -> bool {
        self.elems.contains(&(h % self.modulus))
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> + '_ {
        self.elems.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Smallest `m | N` with `{h = 1 mod m}` contained in `H`.
    pub fn congruence_modulus(&self) -> u64 {
        divisors(self.modulus)
            .into_iter()
            .find(|&m| UnitGroup::congruent_to_one(self.modulus, m).elements().all(|h| self.contains(h)))
            .unwrap()
    }
}

/// `M_{f,d}`: the span of `alpha_d(M_f)` and, when `d != e`, `alpha_e(M_f)`.
#[derive(Clone, Debug)]
pub struct EigenBlock {
    pub f: Arc<NewformRecord>,
    pub n: u64,
    pub m: u64,
    pub d: u64,
    pub e: u64,
}

impl EigenBlock {
    pub fn degree(&self) -> usize {
        self.f.degree()
    }

    pub fn weight(&self) -> u32 {
        self.f.weight
    }

    pub fn dim(&self) -> usize {
        self.degree() * self.slots().len()
    }

    /// Degeneracy index of each half of the block basis.
    pub fn slots(&self) -> Vec<u64> {
        if self.d == self.e {
            vec![self.d]
        } else {
            vec![self.d, self.e]
        }
    }

    /// q-expansions (from `q^0`, `len` terms) of the trace basis
    /// `Tr(a^j alpha_s(f))`, `s` over the slots and `0 <= j < deg`.
    pub fn trace_basis(&self, len: usize) -> Vec<Vec<BigRational>> {
        let mut out = Vec::with_capacity(self.dim());
        for s in self.slots() {
            let s = s as usize;
            let base = self.f.trace_rows(len.div_ceil(s) + 1);
            for row in base {
                let mut r = vec![BigRational::zero(); len];
                for (n, c) in row.into_iter().enumerate() {
                    if n * s < len {
                        r[n * s] = c;
                    }
                }
                out.push(r);
            }
        }
        out
    }

    /// Change of basis from the embedded eigenforms `alpha_s(sigma_i f)` to
    /// the trace basis: `Tr(a^j alpha_s f) = sum_i sigma_i(a)^j alpha_s(sigma_i f)`.
    pub fn trace_to_embedded(&self, orbit: &EmbeddedOrbit) -> Vec<Vec<CBall>> {
        let g = self.degree();
        let dim = self.dim();
        let wp = orbit.prec + 64;
        let mut out = vec![vec![CBall::zero(wp); dim]; dim];
        for s in 0..self.slots().len() {
            for j in 0..g {
                for i in 0..g {
                    out[s * g + j][s * g + i] = orbit.roots[i].pow(j as u64);
                }
            }
        }
        out
    }
}

fn label_key(label: &str) -> Vec<u64> {
    label.split('.').map(|p| p.parse().unwrap_or(u64::MAX)).collect()
}

/// The blocks `M_{f,d}` of `S_k(Gamma)` for the group `Gamma` attached to
/// `H`: every orbit of level `M | N` whose character is trivial on `H`,
/// and every `d | N/M` with `d^2 <= N/M`. Ordered by `M`, then label, then `d`.
pub fn enumerate_blocks(n: u64, k: u32, h: &UnitGroup, store: &FixtureStore) -> Result<Vec<EigenBlock>, NewformError> {
    assert_eq!(h.modulus, n, "H must live in (Z/NZ)^*");
    let mh = h.congruence_modulus();
    let mut out = Vec::new();
    for m in divisors(n) {
        let file = store.get(m, k)?;
        let needed = gcd_u64(mh, m);
        if file.cover % needed != 0 {
            return Err(NewformError::CoverMismatch { level: m, cover: file.cover, needed });
        }
        let mut recs: Vec<&NewformRecord> = file.records.iter().collect();
        recs.sort_by_key(|r| label_key(&r.label));
        for rec in recs {
            let one = rec.field.one();
            let trivial = h.elements().all(|x| rec.eps(x % m).is_some_and(|v| *v == one));
            if !trivial {
                continue;
            }
            let f = Arc::new(rec.clone());
            let q = n / m;
            for d in divisors(q) {
                if d * d <= q {
                    out.push(EigenBlock { f: f.clone(), n, m, d, e: q / d });
                }
            }
        }
    }
    Ok(out)
}

/// `W_N` on the embedded block basis `alpha_s(sigma_i f)` (slot-major), as
/// a ball matrix whose row `r` expresses the image of basis element `r`:
/// `alpha_d(sigma_i f) | W_N = e^k lambda_i (-1)^k M^(k/2) alpha_e(conj sigma_i f)`.
pub fn block_wn_action(blk: &EigenBlock, orbit: &EmbeddedOrbit, lambdas: &[PseudoEigenvalue]) -> Vec<Vec<CBall>> {
    let g = blk.degree();
    let k = blk.weight();
    let wp = orbit.prec + 64;
    let dim = blk.dim();
    let mk2 = Ball::from_int(blk.m as i64, wp).sqrt().unwrap().pow(k as u64);
    let sign = if k % 2 == 1 { -1 } else { 1 };
    let coef = |i: usize, t: u64| {
        let tk = BigInt::from(t).pow(k) * sign;
        lambdas[i].value.mul_real(&mk2).mul_int(&tk)
    };
    let mut out = vec![vec![CBall::zero(wp); dim]; dim];
    for i in 0..g {
        let j = orbit.conj[i];
        if blk.d == blk.e {
            out[i][j] = coef(i, blk.e);
        } else {
            out[i][g + j] = coef(i, blk.e);
            out[g + i][j] = coef(i, blk.d);
        }
    }
    out
}

/// `<m>` on the block's trace basis: `Tr(a^j alpha_s f) -> Tr(a^j eps_f(m) alpha_s f)`,
/// i.e. multiplication by `eps_f(m)` in `L`, once per slot.
pub fn block_diamond_action(blk: &EigenBlock, m: u64) -> Result<QMatrix, NewformError> {
    let eps = blk.f.eps(m % blk.m).ok_or_else(|| NewformError::Schema(format!("{}: no character value at {m}", blk.f.label)))?;
    let mm = blk.f.field.mul_matrix(eps);
    let g = blk.degree();
    let dim = blk.dim();
    Ok(QMatrix::from_fn(dim, dim, |r, c| if r / g == c / g { mm[(r % g, c % g)].clone() } else { BigRational::zero() }))
}
