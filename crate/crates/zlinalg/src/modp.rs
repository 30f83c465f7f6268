//! Dense linear algebra over F_p for word-sized primes.

use crate::matrix::IntMatrix;
use crate::numth::{inv_mod_u64, is_prime_u64, mod_u64, mul_mod};
use crate::LinalgError;

/// A dense matrix over F_p, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    pub rows: usize,
    pub cols: usize,
    pub p: u64,
    pub data: Vec<u64>,
}

impl ModMatrix {
    pub fn reduce(a: &IntMatrix, p: u64) -> Self {
        ModMatrix { rows: a.rows(), cols: a.cols(), p, data: a.data().iter().map(|x| mod_u64(x, p)).collect() }
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![0; self.data.len()];
        for i in 0..self.rows {
            for j in 0..self.cols {
                data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        ModMatrix { rows: self.cols, cols: self.rows, p: self.p, data }
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Reduces `self` to reduced row echelon form in place and returns the
    /// pivot columns. Nonzero rows end up on top.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        let (rows, cols, p) = (self.rows, self.cols, self.p);
        let d = &mut self.data;
        let mut pivots = Vec::new();
        let mut r = 0;
        for j in 0..cols {
            if r == rows {
                break;
            }
            let Some(k) = (r..rows).find(|&i| d[i * cols + j] != 0) else {
                continue;
            };
            if k != r {
                for t in 0..cols {
                    d.swap(k * cols + t, r * cols + t);
                }
            }
            let inv = inv_mod_u64(d[r * cols + j], p).expect("nonzero element of a prime field");
            for t in j..cols {
                d[r * cols + t] = mul_mod(d[r * cols + t], inv, p);
            }
            let (before, rest) = d.split_at_mut(r * cols);
            let (prow, after) = rest.split_at_mut(cols);
            let eliminate = |row: &mut [u64]| {
                let f = row[j];
                if f == 0 {
                    return;
                }
                let nf = p - f;
                for t in j..cols {
                    if prow[t] != 0 {
                        row[t] = ((row[t] as u128 + nf as u128 * prow[t] as u128) % p as u128) as u64;
                    }
                }
            };
            before.chunks_mut(cols).for_each(eliminate);
            after.chunks_mut(cols).for_each(eliminate);
            pivots.push(j);
            r += 1;
        }
        pivots
    }

    /// Basis of the right null space, one vector per non-pivot column.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let p = self.p;
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![0u64; self.cols];
                v[f] = 1;
                for (i, &c) in pivots.iter().enumerate() {
                    let x = m.data[i * self.cols + f];
                    v[c] = if x == 0 { 0 } else { p - x };
                }
                v
            })
            .collect()
    }
}

fn check_prime(p: u64) -> Result<(), LinalgError> {
    if is_prime_u64(p) {
        Ok(())
    } else {
        Err(LinalgError::NotPrime(p))
    }
}

/// Rank of `a` over F_p.
pub fn rank_mod_p(a: &IntMatrix, p: u64) -> Result<usize, LinalgError> {
    check_prime(p)?;
    Ok(ModMatrix::reduce(a, p).rref_in_place().len())
}

/// Right null space of `a` over F_p.
pub fn kernel_mod_p(a: &IntMatrix, p: u64) -> Result<Vec<Vec<u64>>, LinalgError> {
    check_prime(p)?;
    Ok(ModMatrix::reduce(a, p).kernel())
}

/// Left null space of `a` over F_p: vectors `y` with `y*a = 0`.
pub fn left_kernel_mod_p(a: &IntMatrix, p: u64) -> Result<Vec<Vec<u64>>, LinalgError> {
    check_prime(p)?;
    Ok(ModMatrix::reduce(a, p).transpose().kernel())
}
