use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use zlinalg::IntMatrix;

/// `mu` and the squared norms `|b*_i|^2` from the Gram matrix.
fn gram_schmidt(g: &[Vec<BigInt>]) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let k = g.len();
    let mut mu = vec![vec![BigRational::zero(); k]; k];
    let mut norm = vec![BigRational::zero(); k];
    for i in 0..k {
        for j in 0..i {
            let mut s = BigRational::from_integer(g[i][j].clone());
            for l in 0..j {
                s -= &mu[j][l] * &mu[i][l] * &norm[l];
            }
            mu[i][j] = s / &norm[j];
        }
        let mut s = BigRational::from_integer(g[i][i].clone());
        for l in 0..i {
            s -= &mu[i][l] * &mu[i][l] * &norm[l];
        }
        norm[i] = s;
    }
    (mu, norm)
}

/// LLL reduction (`delta = 3/4`) of linearly independent integer rows, run
/// on the Gram matrix with the unimodular transform applied at the end.
pub fn lll_reduce(m: &IntMatrix) -> IntMatrix {
    let k = m.rows();
    if k == 0 {
        return m.clone();
    }
    let mut g = m.mul(&m.transpose()).to_rows();
    let mut u = IntMatrix::identity(k).to_rows();
    let delta = BigRational::new(3.into(), 4.into());
    // b_i -= q b_j
    let reduce = |g: &mut Vec<Vec<BigInt>>, u: &mut Vec<Vec<BigInt>>, i: usize, j: usize, q: &BigInt| {
        let uj = u[j].clone();
        for (x, y) in u[i].iter_mut().zip(&uj) {
            *x -= q * y;
        }
        let gj = g[j].clone();
        for (x, y) in g[i].iter_mut().zip(&gj) {
            *x -= q * y;
        }
        for row in g.iter_mut() {
            let t = q * &row[j];
            row[i] -= t;
        }
    };
    let mut i = 1;
    while i < k {
        for j in (0..i).rev() {
            let (mu, _) = gram_schmidt(&g);
            let q = mu[i][j].round().to_integer();
            if !q.is_zero() {
                reduce(&mut g, &mut u, i, j, &q);
            }
        }
        let (mu, norm) = gram_schmidt(&g);
        if norm[i] >= (&delta - &mu[i][i - 1] * &mu[i][i - 1]) * &norm[i - 1] {
            i += 1;
        } else {
            u.swap(i, i - 1);
            g.swap(i, i - 1);
            for row in g.iter_mut() {
                row.swap(i, i - 1);
            }
            i = (i - 1).max(1);
        }
    }
    let mut out = IntMatrix::from_rows(u).mul(m);
    for r in 0..k {
        if out.row(r).iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            for x in out.row_mut(r) {
                *x = -&*x;
            }
        }
    }
    out
}
