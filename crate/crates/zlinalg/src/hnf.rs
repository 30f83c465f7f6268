use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::IntMatrix;
use crate::numth::ext_gcd;
use crate::LinalgError;

/// Row-style Hermite normal form `H = U*A`.
///
/// `H` is upper triangular with its zero rows at the bottom, each pivot is
/// positive and strictly right of the pivots above it, and entries above a
/// pivot lie in `[0, pivot)`.
#[derive(Clone, Debug)]
pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
    /// Column index of the pivot in each nonzero row.
    pub pivots: Vec<usize>,
    /// `det U`, which is `+1` unless `A` has full row rank and the reduction
    /// needed an odd number of sign flips.
    pub det_u: i8,
}

impl Hnf {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// `[s, t, c, d]` with determinant 1 sending `(x, y)` to `(gcd, 0)` under
/// `(x, y) -> (s*x + t*y, c*x + d*y)`. When `x | y` this is a plain
/// subtraction, which keeps the other entries of the pivot row untouched.
pub(crate) fn elimination_coeffs(x: &BigInt, y: &BigInt) -> [BigInt; 4] {
    if y.is_multiple_of(x) {
        return [BigInt::one(), BigInt::zero(), -(y / x), BigInt::one()];
    }
    let (g, s, t) = ext_gcd(x, y);
    [s, t, -(y / &g), x / &g]
}

fn combine_rows(m: &mut IntMatrix, r: usize, i: usize, coeffs: [&BigInt; 4]) {
    // row_r <- a*row_r + b*row_i, row_i <- c*row_r + d*row_i
    let [a, b, c, d] = coeffs;
    for j in 0..m.cols() {
        let x = m[(r, j)].clone();
        let y = m[(i, j)].clone();
        if x.is_zero() && y.is_zero() {
            continue;
        }
        m[(r, j)] = a * &x + b * &y;
        m[(i, j)] = c * &x + d * &y;
    }
}

fn add_multiple(m: &mut IntMatrix, dst: usize, src: usize, q: &BigInt) {
    // row_dst <- row_dst - q*row_src
    for j in 0..m.cols() {
        if m[(src, j)].is_zero() {
            continue;
        }
        let t = q * &m[(src, j)];
        m[(dst, j)] -= t;
    }
}

fn negate_row(m: &mut IntMatrix, i: usize) {
    for x in m.row_mut(i) {
        *x = -&*x;
    }
}

pub fn hnf(a: &IntMatrix) -> Hnf {
    let rows = a.rows();
    let mut h = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut pivots = Vec::new();
    let mut sign = 1i8;
    let mut r = 0;
    for j in 0..a.cols() {
        if r == rows {
            break;
        }
        // Bring a nonzero entry to row r, then fold every lower row into it.
        let Some(first) = (r..rows).find(|&i| !h[(i, j)].is_zero()) else {
            continue;
        };
        if first != r {
            h.swap_rows(first, r);
            u.swap_rows(first, r);
            sign = -sign;
        }
        for i in r + 1..rows {
            if h[(i, j)].is_zero() {
                continue;
            }
            let [s, t, c, d] = elimination_coeffs(&h[(r, j)], &h[(i, j)]);
            combine_rows(&mut h, r, i, [&s, &t, &c, &d]);
            combine_rows(&mut u, r, i, [&s, &t, &c, &d]);
        }
        if h[(r, j)].is_negative() {
            negate_row(&mut h, r);
            negate_row(&mut u, r);
            sign = -sign;
        }
        let p = h[(r, j)].clone();
        for i in 0..r {
            let q = h[(i, j)].div_floor(&p);
            if !q.is_zero() {
                add_multiple(&mut h, i, r, &q);
                add_multiple(&mut u, i, r, &q);
            }
        }
        pivots.push(j);
        r += 1;
    }
    if sign < 0 && r < rows {
        // A zero row of H lets us flip det U without touching H.
        negate_row(&mut u, rows - 1);
        sign = 1;
    }
    Hnf { h, u, pivots, det_u: sign }
}

/// Checks the three defining conditions of the Hermite normal form.
pub fn is_hnf(h: &IntMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero_row = false;
    for i in 0..h.rows() {
        let lead = (0..h.cols()).find(|&j| !h[(i, j)].is_zero());
        match lead {
            None => seen_zero_row = true,
            Some(j) => {
                if seen_zero_row || last_pivot.is_some_and(|p| j <= p) || !h[(i, j)].is_positive() {
                    return false;
                }
                let p = &h[(i, j)];
                if (0..i).any(|k| h[(k, j)].is_negative() || &h[(k, j)] >= p) {
                    return false;
                }
                last_pivot = Some(j);
            }
        }
    }
    true
}

/// Product of the pivots of a matrix in Hermite normal form.
pub fn pivot_product(h: &IntMatrix) -> Result<BigInt, LinalgError> {
    let mut alpha = BigInt::one();
    let mut seen_zero = false;
    let mut last: Option<usize> = None;
    for i in 0..h.rows() {
        match (0..h.cols()).find(|&j| !h[(i, j)].is_zero()) {
            None => seen_zero = true,
            Some(j) => {
                if seen_zero || last.is_some_and(|p| j <= p) || !h[(i, j)].is_positive() {
                    return Err(LinalgError::Malformed("matrix is not in Hermite normal form".into()));
                }
                last = Some(j);
                alpha *= &h[(i, j)];
            }
        }
    }
    Ok(alpha)
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(a: &IntMatrix) -> BigInt {
    assert_eq!(a.rows(), a.cols(), "determinant of a non-square matrix");
    let n = a.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[(i, k)].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            m.swap_rows(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                m[(i, j)] = v;
            }
            m[(i, k)] = BigInt::zero();
        }
        prev = m[(k, k)].clone();
    }
    sign * &m[(n - 1, n - 1)]
}

/// True if the square matrix has determinant ±1.
pub fn is_unimodular(a: &IntMatrix) -> bool {
    a.rows() == a.cols() && det(a).abs().is_one()
}
