//! Multimodular echelon forms over Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::matrix::{IntMatrix, QMatrix};
use crate::modp::ModMatrix;
use crate::numth::{crt_step, large_primes};
use crate::rational::Rref;

/// Lifts residues modulo `m` to rationals, sharing a running denominator so
/// that entries with a common denominator cost one multiplication each.
fn reconstruct_all(values: &[BigInt], m: &BigInt) -> Option<Vec<BigRational>> {
    let bound = (m >> 1usize).sqrt();
    let half = m >> 1usize;
    let mut d = BigInt::one();
    let mut out = Vec::with_capacity(values.len());
    for x in values {
        let mut y = (x * &d).mod_floor(m);
        if y > half {
            y -= m;
        }
        if y.abs() <= bound {
            out.push(BigRational::new(y, d.clone()));
            continue;
        }
        let r = crate::numth::rational_reconstruct(&y, m)?;
        // y = x*d, so x = r/d
        let v = BigRational::new(r.numer().clone(), r.denom() * &d);
        d = d.lcm(v.denom());
        out.push(v);
    }
    Some(out)
}

/// `m = m[:, pivots] * r` exactly, which certifies `r` as the row echelon
/// form of `m` once its rank is known to be at least `r.rows()`.
fn verify(a: &IntMatrix, r: &QMatrix, pivots: &[usize]) -> bool {
    let (den, rs) = r.to_integer_scaled();
    let ap = a.select_cols(pivots);
    let lhs = ap.mul(&rs);
    a.data().iter().zip(lhs.data()).all(|(x, y)| &(x * &den) == y)
}

/// Reduced row echelon form of an integer matrix, computed modularly.
pub fn rref_modular(a: &IntMatrix) -> Rref {
    let (rows, cols) = (a.rows(), a.cols());
    if rows == 0 || cols == 0 || a.is_zero() {
        return Rref { r: QMatrix::zeros(0, cols), pivots: Vec::new() };
    }
    let mut best: Option<Vec<usize>> = None;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    for p in large_primes() {
        let mut mm = ModMatrix::reduce(a, p);
        let pivots = mm.rref_in_place();
        let residues = &mm.data[..pivots.len() * cols];
        let better = match &best {
            None => true,
            Some(b) => pivots.len() > b.len() || (pivots.len() == b.len() && pivots < *b),
        };
        if better {
            acc = residues.iter().map(|&x| BigInt::from(x)).collect();
            modulus = BigInt::from(p);
            best = Some(pivots);
        } else if best.as_ref() == Some(&pivots) {
            for (x, &r) in acc.iter_mut().zip(residues) {
                *x = crt_step(x, &modulus, r, p);
            }
            modulus *= p;
        } else {
            continue;
        }
        let pivots = best.as_ref().unwrap();
        if let Some(vals) = reconstruct_all(&acc, &modulus) {
            let r = QMatrix::from_vec(pivots.len(), cols, vals);
            if verify(a, &r, pivots) {
                return Rref { r, pivots: pivots.clone() };
            }
        }
    }
    unreachable!("the prime iterator is infinite")
}

/// Basis of the right null space, one vector per free column `f`, with a 1
/// at `f` and zeros at the other free columns.
pub fn kernel_free_basis(a: &IntMatrix) -> QMatrix {
    let e = rref_modular(a);
    let cols = a.cols();
    let mut is_pivot = vec![false; cols];
    for &c in &e.pivots {
        is_pivot[c] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let mut k = QMatrix::zeros(free.len(), cols);
    for (t, &f) in free.iter().enumerate() {
        k[(t, f)] = BigRational::one();
        for (i, &c) in e.pivots.iter().enumerate() {
            let x = &e.r[(i, f)];
            if !x.is_zero() {
                k[(t, c)] = -x;
            }
        }
    }
    k
}
