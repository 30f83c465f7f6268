use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use zlinalg::QMatrix;

use crate::QExpError;

/// `L = Q[x]/(f)` for a monic integer polynomial `f`, with elements written
/// as coefficient vectors in the power basis `1, a, ..., a^(deg-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NumberField {
    /// Coefficients of `f`, constant term first.
    poly: Vec<BigInt>,
    /// `Tr(a^j)` for `0 <= j < 2 deg`.
    power_traces: Vec<BigInt>,
}

impl NumberField {
    pub fn new(poly: Vec<BigInt>) -> Result<NumberField, QExpError> {
        if poly.len() < 2 {
            return Err(QExpError::BadPolynomial("degree must be at least 1".into()));
        }
        if !poly.last().unwrap().is_one() {
            return Err(QExpError::BadPolynomial("polynomial must be monic".into()));
        }
        let n = poly.len() - 1;
        // Newton's identities for the power sums of the roots.
        let c = |i: usize| &poly[i];
        let mut p: Vec<BigInt> = vec![BigInt::from(n)];
        for j in 1..2 * n {
            let mut s = BigInt::zero();
            for i in 1..j.min(n + 1) {
                s += c(n - i) * &p[j - i];
            }
            if j <= n {
                s += c(n - j) * BigInt::from(j);
            }
            p.push(-s);
        }
        Ok(NumberField { poly, power_traces: p })
    }

    pub fn rationals() -> NumberField {
        NumberField::new(vec![BigInt::zero(), BigInt::one()]).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    pub fn poly(&self) -> &[BigInt] {
        &self.poly
    }

    pub fn zero(&self) -> Vec<BigRational> {
        vec![BigRational::zero(); self.degree()]
    }

    pub fn one(&self) -> Vec<BigRational> {
        self.from_rational(&BigRational::one())
    }

    pub fn from_rational(&self, x: &BigRational) -> Vec<BigRational> {
        let mut v = self.zero();
        v[0] = x.clone();
        v
    }

    /// The generator `a`.
    pub fn gen(&self) -> Vec<BigRational> {
        self.reduce(&[BigRational::zero(), BigRational::one()])
    }

    /// Reduces an arbitrary polynomial in `a` modulo `f`.
    pub fn reduce(&self, c: &[BigRational]) -> Vec<BigRational> {
        let n = self.degree();
        let mut r = c.to_vec();
        for d in (n..r.len()).rev() {
            let top = std::mem::take(&mut r[d]);
            if top.is_zero() {
                continue;
            }
            for i in 0..n {
                if !self.poly[i].is_zero() {
                    r[d - n + i] -= &top * &self.poly[i];
                }
            }
        }
        r.resize(n, BigRational::zero());
        r
    }

    pub fn add(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(&self, a: &[BigRational], c: &BigRational) -> Vec<BigRational> {
        a.iter().map(|x| x * c).collect()
    }

    pub fn mul(&self, a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut full = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    full[i + j] += x * y;
                }
            }
        }
        self.reduce(&full)
    }

    pub fn pow(&self, a: &[BigRational], e: u32) -> Vec<BigRational> {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Row `k` holds the coordinates of `a^k x`.
    pub fn mul_matrix(&self, x: &[BigRational]) -> QMatrix {
        let n = self.degree();
        let mut rows = Vec::with_capacity(n);
        let mut cur = x.to_vec();
        let g = self.gen();
        for _ in 0..n {
            rows.push(cur.clone());
            cur = self.mul(&cur, &g);
        }
        QMatrix::from_rows(rows)
    }

    pub fn inv(&self, x: &[BigRational]) -> Option<Vec<BigRational>> {
        // y M(x) = 1 where M(x) is the multiplication matrix
        let m = self.mul_matrix(x);
        let one = QMatrix::from_rows(vec![self.one()]);
        zlinalg::solve_left(&m, &one).ok().map(|y| y.row(0).to_vec())
    }

    /// `Tr_{L/Q}`.
    pub fn trace(&self, x: &[BigRational]) -> BigRational {
        x.iter().zip(&self.power_traces).fold(BigRational::zero(), |acc, (c, t)| acc + c * t)
    }

    /// `Tr(a^j)` for `j < 2 deg`.
    pub fn power_trace(&self, j: usize) -> &BigInt {
        &self.power_traces[j]
    }

    pub fn is_integral_vector(x: &[BigRational]) -> bool {
        x.iter().all(|c| c.is_integer())
    }

    pub fn is_rational(x: &[BigRational]) -> bool {
        x[1..].iter().all(|c| c.is_zero())
    }
}
