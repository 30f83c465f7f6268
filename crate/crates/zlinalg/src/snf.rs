use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntMatrix;
use crate::hnf::elimination_coeffs;

/// Smith normal form `U*A*V = diag(b_1, ..., b_r, 0, ...)` with
/// `b_1 | b_2 | ... | b_r` all positive.
#[derive(Clone, Debug)]
pub struct Snf {
    pub diag: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

fn row_combine(m: &mut IntMatrix, r: usize, i: usize, [a, b, c, d]: [&BigInt; 4]) {
    for j in 0..m.cols() {
        let x = m[(r, j)].clone();
        let y = m[(i, j)].clone();
        m[(r, j)] = a * &x + b * &y;
        m[(i, j)] = c * &x + d * &y;
    }
}

fn col_combine(m: &mut IntMatrix, r: usize, i: usize, [a, b, c, d]: [&BigInt; 4]) {
    for j in 0..m.rows() {
        let x = m[(j, r)].clone();
        let y = m[(j, i)].clone();
        m[(j, r)] = a * &x + b * &y;
        m[(j, i)] = c * &x + d * &y;
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    for j in 0..m.rows() {
        let t = m[(j, a)].clone();
        m[(j, a)] = m[(j, b)].clone();
        m[(j, b)] = t;
    }
}

pub fn snf(a: &IntMatrix) -> Snf {
    let (rows, cols) = (a.rows(), a.cols());
    let mut m = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        // Move the smallest nonzero entry of the trailing block to (t, t).
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[(i, j)].is_zero() && best.is_none_or(|(bi, bj)| m[(i, j)].abs() < m[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        m.swap_rows(t, bi);
        u.swap_rows(t, bi);
        swap_cols(&mut m, t, bj);
        swap_cols(&mut v, t, bj);
        loop {
            for i in t + 1..rows {
                if m[(i, t)].is_zero() {
                    continue;
                }
                let [s, w, c, d] = elimination_coeffs(&m[(t, t)], &m[(i, t)]);
                row_combine(&mut m, t, i, [&s, &w, &c, &d]);
                row_combine(&mut u, t, i, [&s, &w, &c, &d]);
            }
            for j in t + 1..cols {
                if m[(t, j)].is_zero() {
                    continue;
                }
                let [s, w, c, d] = elimination_coeffs(&m[(t, t)], &m[(t, j)]);
                col_combine(&mut m, t, j, [&s, &w, &c, &d]);
                col_combine(&mut v, t, j, [&s, &w, &c, &d]);
            }
            if (t + 1..rows).any(|i| !m[(i, t)].is_zero()) {
                continue;
            }
            // Divisibility: fold a row with an offending entry into row t.
            let p = m[(t, t)].clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !m[(i, j)].is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    let zero = BigInt::zero();
                    row_combine(&mut m, t, i, [&one, &one, &zero, &one]);
                    row_combine(&mut u, t, i, [&one, &one, &zero, &one]);
                }
                None => break,
            }
        }
        if m[(t, t)].is_negative() {
            for x in m.row_mut(t) {
                *x = -&*x;
            }
            for x in u.row_mut(t) {
                *x = -&*x;
            }
        }
        diag.push(m[(t, t)].clone());
    }
    Snf { diag, u, v }
}
