//! Echelon forms, kernels and solves over Q.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::matrix::{IntMatrix, QMatrix};
use crate::multimod::{kernel_free_basis, rref_modular};
use crate::LinalgError;

/// Reduced row echelon form: `r` holds only the nonzero rows.
#[derive(Clone, Debug, PartialEq)]
pub struct Rref {
    pub r: QMatrix,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn denominator_lcm<'a>(it: impl Iterator<Item = &'a BigRational>) -> BigInt {
    it.fold(BigInt::one(), |d, x| if x.denom().is_one() { d } else { d.lcm(x.denom()) })
}

/// Scales every row by the lcm of its denominators. Row operations of this
/// kind leave echelon forms and kernels unchanged.
pub fn integral_rows(a: &QMatrix) -> IntMatrix {
    let mut out = IntMatrix::zeros(a.rows(), a.cols());
    for i in 0..a.rows() {
        let d = BigRational::from_integer(denominator_lcm(a.row(i).iter()));
        for j in 0..a.cols() {
            out[(i, j)] = (&a[(i, j)] * &d).to_integer();
        }
    }
    out
}

pub fn rref(a: &QMatrix) -> Rref {
    rref_modular(&integral_rows(a))
}

pub fn rank(a: &QMatrix) -> usize {
    rref(a).rank()
}

/// Basis of `{x : a*x = 0}` as the rows of a matrix in reduced row echelon
/// form (leading entries 1, sorted by pivot column).
pub fn kernel(a: &QMatrix) -> QMatrix {
    kernel_int(&integral_rows(a))
}

pub fn kernel_int(a: &IntMatrix) -> QMatrix {
    let k = kernel_free_basis(a);
    if k.rows() == 0 {
        return k;
    }
    rref(&k).r
}

/// Basis of `{y : y*a = 0}`, echelonized like [`kernel`].
pub fn left_kernel(a: &QMatrix) -> QMatrix {
    kernel(&a.transpose())
}

/// The unique `x` with `x*a = b`, where `a` has full row rank.
pub fn solve_left(a: &QMatrix, b: &QMatrix) -> Result<QMatrix, LinalgError> {
    if a.cols() != b.cols() {
        return Err(LinalgError::DimensionMismatch(format!(
            "solve_left: {} columns against {}",
            a.cols(),
            b.cols()
        )));
    }
    let g = a.rows();
    let pivots = rref(a).pivots;
    if pivots.len() < g {
        return Err(LinalgError::RankDeficient { rank: pivots.len(), needed: g });
    }
    // x * a[:, P] = b[:, P] with a[:, P] invertible; solve the transpose.
    let ap = a.select_cols(&pivots).transpose();
    let bp = b.select_cols(&pivots).transpose();
    let aug = QMatrix::from_fn(g, g + b.rows(), |i, j| if j < g { ap[(i, j)].clone() } else { bp[(i, j - g)].clone() });
    let e = rref(&aug);
    debug_assert_eq!(e.pivots, (0..g).collect::<Vec<_>>());
    let x = QMatrix::from_fn(b.rows(), g, |i, j| e.r[(j, g + i)].clone());
    if &x.mul(a) != b {
        return Err(LinalgError::Inconsistent);
    }
    Ok(x)
}

pub fn inverse(a: &QMatrix) -> Result<QMatrix, LinalgError> {
    let n = a.rows();
    if a.cols() != n {
        return Err(LinalgError::DimensionMismatch("inverse of a non-square matrix".into()));
    }
    let aug = QMatrix::from_fn(n, 2 * n, |i, j| {
        if j < n {
            a[(i, j)].clone()
        } else if j - n == i {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    });
    let e = rref(&aug);
    if n > 0 && (e.pivots.len() < n || e.pivots[n - 1] >= n) {
        return Err(LinalgError::Singular);
    }
    Ok(QMatrix::from_fn(n, n, |i, j| e.r[(i, n + j)].clone()))
}

pub fn det(a: &QMatrix) -> BigRational {
    assert_eq!(a.rows(), a.cols(), "determinant of a non-square matrix");
    let mut scale = BigInt::one();
    for i in 0..a.rows() {
        scale *= denominator_lcm(a.row(i).iter());
    }
    BigRational::new(crate::hnf::det(&integral_rows(a)), scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_singular_fails() {
        let a = IntMatrix::from_i64(&[&[1, 2], &[2, 4]]).to_rational();
        assert_eq!(inverse(&a), Err(LinalgError::Singular));
        assert!(inverse(&QMatrix::zeros(0, 0)).is_ok());
    }
}
