//! Saturation of a row lattice: the integral points of its rational span.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::hnf::hnf;
use crate::matrix::IntMatrix;
use crate::modp::ModMatrix;
use crate::numth::factor;
use crate::rational::rref;

/// HNF basis of `{c in Z^r : c*x ≡ 0 (mod q)}` where `q = p^e`.
fn congruence_lattice(x: &IntMatrix, p: &BigInt, e: u32) -> IntMatrix {
    let r = x.rows();
    let pe = p.pow(e);
    let pu = p.to_u64();
    let mut c = IntMatrix::identity(r);
    for step in 0..e {
        // Rows of c*x are divisible by p^step; find combinations that gain
        // one more factor of p.
        let pk = p.pow(step);
        let y = c.mul(x).map(|v| v / &pk);
        let ker: Vec<Vec<BigInt>> = match pu {
            Some(pu) => ModMatrix::reduce(&y, pu)
                .transpose()
                .kernel()
                .into_iter()
                .map(|v| v.into_iter().map(BigInt::from).collect())
                .collect(),
            None => big_prime_left_kernel(&y, p),
        };
        let mut gens = IntMatrix::zeros(0, r);
        if !ker.is_empty() {
            gens = IntMatrix::from_rows(ker).mul(&c);
        }
        gens = gens.vstack(&c.scale(p)).vstack(&IntMatrix::identity(r).scale(&pe));
        let h = hnf(&gens).h;
        c = h.select_rows(&(0..r).collect::<Vec<_>>());
    }
    c
}

/// Left kernel modulo a prime too large for a machine word: rows of the
/// mod-p echelon form, found by plain Gaussian elimination on BigInts.
fn big_prime_left_kernel(y: &IntMatrix, p: &BigInt) -> Vec<Vec<BigInt>> {
    let t = y.transpose();
    let (rows, cols) = (t.rows(), t.cols());
    let mut m: Vec<Vec<BigInt>> = (0..rows).map(|i| t.row(i).iter().map(|v| v.mod_floor(p)).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for j in 0..cols {
        let Some(k) = (r..rows).find(|&i| !m[i][j].is_zero()) else { continue };
        m.swap(k, r);
        let inv = m[r][j].modpow(&(p - 2), p);
        for v in m[r].iter_mut() {
            *v = (&*v * &inv) % p;
        }
        for i in 0..rows {
            if i != r && !m[i][j].is_zero() {
                let f = m[i][j].clone();
                for t2 in 0..cols {
                    let s = &m[r][t2] * &f;
                    m[i][t2] = ((&m[i][t2] - s) % p + p) % p;
                }
            }
        }
        pivots.push(j);
        r += 1;
        if r == rows {
            break;
        }
    }
    (0..cols)
        .filter(|f| !pivots.contains(f))
        .map(|f| {
            let mut v = vec![BigInt::zero(); cols];
            v[f] = BigInt::from(1);
            for (i, &c) in pivots.iter().enumerate() {
                v[c] = (p - &m[i][f]) % p;
            }
            v
        })
        .collect()
}

/// HNF basis of `span_Q(rows of m) ∩ Z^n`.
pub fn saturate_rows(m: &IntMatrix) -> IntMatrix {
    let e = rref(&m.to_rational());
    let rank = e.rank();
    if rank == 0 {
        return IntMatrix::zeros(0, m.cols());
    }
    let (d, rs) = e.r.to_integer_scaled();
    // An integral point of the span is c*R with c integral (R is the identity
    // on pivot columns), so the lattice is {c : c*R' ≡ 0 mod D} times R.
    let mut lattice = IntMatrix::identity(rank);
    let mut modulus = BigInt::from(1);
    for (p, k) in factor(&d) {
        let pe = p.pow(k);
        let local = congruence_lattice(&rs, &p, k);
        // L1 ∩ L2 = b*L1 + a*L2 when a*Z^r ⊆ L1, b*Z^r ⊆ L2, gcd(a, b) = 1.
        let gens = lattice.scale(&pe).vstack(&local.scale(&modulus));
        lattice = hnf(&gens).h.select_rows(&(0..rank).collect::<Vec<_>>());
        modulus *= pe;
    }
    let r = e.r;
    let c = lattice.to_rational();
    let out = c.mul(&r);
    out.map(|x: &BigRational| {
        debug_assert!(x.is_integer());
        x.to_integer()
    })
}
