use std::fmt;

use ball::CBall;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use zlinalg::numth::lcm_u64;
use zlinalg::{IntMatrix, QMatrix};

use crate::{CycNum, CycloError};

/// Dense matrix over `Q(zeta_n)` with every entry stored at conductor `n`.
#[derive(Clone, PartialEq, Eq)]
pub struct CycMatrix {
    rows: usize,
    cols: usize,
    n: u64,
    data: Vec<CycNum>,
}

impl CycMatrix {
    pub fn zeros(rows: usize, cols: usize, n: u64) -> CycMatrix {
        let z = CycNum::zero().lift(n);
        CycMatrix { rows, cols, n, data: vec![z; rows * cols] }
    }

    pub fn identity(k: usize, n: u64) -> CycMatrix {
        let mut m = CycMatrix::zeros(k, k, n);
        let one = CycNum::one().lift(n);
        for i in 0..k {
            m.data[i * k + i] = one.clone();
        }
        m
    }

    /// Entries are lifted to conductor `n`, which must be a multiple of each
    /// entry's own conductor.
    pub fn from_fn(rows: usize, cols: usize, n: u64, mut f: impl FnMut(usize, usize) -> CycNum) -> CycMatrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j).lift(n));
            }
        }
        CycMatrix { rows, cols, n, data }
    }

    /// Conductor is the lcm of the entries' conductors.
    pub fn from_rows(rows: Vec<Vec<CycNum>>) -> CycMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        let n = rows.iter().flatten().fold(1, |m, x| lcm_u64(m, x.conductor()));
        let data = rows.into_iter().flatten().map(|x| x.lift(n)).collect();
        CycMatrix { rows: r, cols: c, n, data }
    }

    pub fn from_int(m: &IntMatrix, n: u64) -> CycMatrix {
        CycMatrix::from_fn(m.rows(), m.cols(), n, |i, j| CycNum::from_int(m[(i, j)].clone()))
    }

    pub fn from_rational(m: &QMatrix, n: u64) -> CycMatrix {
        CycMatrix::from_fn(m.rows(), m.cols(), n, |i, j| CycNum::from_rational(&m[(i, j)]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &CycNum {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: CycNum) {
        self.data[i * self.cols + j] = x.lift(self.n);
    }

    pub fn row(&self, i: usize) -> &[CycNum] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<CycNum>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn lift(&self, m: u64) -> CycMatrix {
        CycMatrix { rows: self.rows, cols: self.cols, n: m, data: self.data.iter().map(|x| x.lift(m)).collect() }
    }

    fn common(&self, o: &CycMatrix) -> (CycMatrix, CycMatrix) {
        let m = lcm_u64(self.n, o.n);
        (self.lift(m), o.lift(m))
    }

    fn zip(&self, o: &CycMatrix, f: impl Fn(&CycNum, &CycNum) -> CycNum) -> CycMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        let (a, b) = self.common(o);
        let data = a.data.iter().zip(&b.data).map(|(x, y)| f(x, y).lift(a.n)).collect();
        CycMatrix { data, ..a }
    }

    pub fn add(&self, o: &CycMatrix) -> CycMatrix {
        self.zip(o, CycNum::add)
    }

    pub fn sub(&self, o: &CycMatrix) -> CycMatrix {
        self.zip(o, CycNum::sub)
    }

    pub fn neg(&self) -> CycMatrix {
        self.map(|x| x.neg())
    }

    pub fn scale(&self, c: &CycNum) -> CycMatrix {
        let m = lcm_u64(self.n, c.conductor());
        let c = c.lift(m);
        self.lift(m).map(|x| x.mul(&c))
    }

    pub fn map(&self, f: impl Fn(&CycNum) -> CycNum) -> CycMatrix {
        let data = self.data.iter().map(|x| f(x).lift(self.n)).collect();
        CycMatrix { rows: self.rows, cols: self.cols, n: self.n, data }
    }

    pub fn mul(&self, o: &CycMatrix) -> CycMatrix {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let (a, b) = self.common(o);
        let mut out = CycMatrix::zeros(a.rows, b.cols, a.n);
        for i in 0..a.rows {
            for j in 0..b.cols {
                let mut acc = CycNum::zero();
                for k in 0..a.cols {
                    let x = a.get(i, k);
                    let y = b.get(k, j);
                    if !x.is_zero() && !y.is_zero() {
                        acc = acc.add(&x.mul(y));
                    }
                }
                out.data[i * b.cols + j] = acc.lift(a.n);
            }
        }
        out
    }

    pub fn transpose(&self) -> CycMatrix {
        CycMatrix::from_fn(self.cols, self.rows, self.n, |i, j| self.get(j, i).clone())
    }

    /// Entrywise `sigma_d`.
    pub fn galois(&self, d: i64) -> CycMatrix {
        self.map(|x| x.galois(d))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..self.cols).all(|j| if i == j { self.get(i, j).is_one() } else { self.get(i, j).is_zero() }))
    }

    /// Least common multiple of the entries' denominators.
    pub fn denominator(&self) -> BigInt {
        self.data.iter().fold(BigInt::one(), |d, x| d.lcm(x.denominator()))
    }

    pub fn is_integral(&self) -> bool {
        self.data.iter().all(|x| x.is_integral())
    }

    /// The matrix as a rational matrix, if every entry is rational.
    pub fn to_rational(&self) -> Option<QMatrix> {
        let vals: Option<Vec<BigRational>> = self.data.iter().map(|x| x.to_rational()).collect();
        Some(QMatrix::from_vec(self.rows, self.cols, vals?))
    }

    pub fn to_int(&self) -> Option<IntMatrix> {
        let q = self.to_rational()?;
        q.data().iter().all(|x| x.is_integer()).then(|| q.map(|x| x.to_integer()))
    }

    /// Restriction of scalars: each entry `a` becomes the `phi x phi` block
    /// whose row `k` holds the coordinates of `zeta^k a`, so that row vectors
    /// of coordinates multiply on the right as elements do.
    pub fn restrict(&self) -> QMatrix {
        let phi = CycNum::zero().lift(self.n).phi();
        let mut out = QMatrix::from_fn(self.rows * phi, self.cols * phi, |_, _| BigRational::zero());
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..phi {
                    let c = CycNum::zeta_pow(self.n, k as i64).mul(a).lift(self.n).coeffs();
                    for (l, v) in c.into_iter().enumerate() {
                        out.row_mut(i * phi + k)[j * phi + l] = v;
                    }
                }
            }
        }
        out
    }

    /// Coordinates of each row, concatenated entry by entry.
    fn flatten_rows(&self) -> QMatrix {
        let phi = CycNum::zero().lift(self.n).phi();
        QMatrix::from_fn(self.rows, self.cols * phi, |i, c| self.get(i, c / phi).coeffs()[c % phi].clone())
    }

    /// `X` with `X * a = b`, for `a` of full row rank over `Q(zeta_n)`.
    pub fn solve_left(a: &CycMatrix, b: &CycMatrix) -> Result<CycMatrix, CycloError> {
        if a.cols != b.cols {
            return Err(zlinalg::LinalgError::DimensionMismatch(format!("{} vs {} columns", a.cols, b.cols)).into());
        }
        let (a, b) = a.common(b);
        let n = a.n;
        let phi = CycNum::zero().lift(n).phi();
        let x = zlinalg::solve_left(&a.restrict(), &b.flatten_rows())?;
        Ok(CycMatrix::from_fn(b.rows, a.rows, n, |i, j| {
            CycNum::from_poly(n, &x.row(i)[j * phi..(j + 1) * phi])
        }))
    }

    /// Rank over `Q(zeta_n)`.
    pub fn rank(&self) -> usize {
        let phi = CycNum::zero().lift(self.n).phi();
        zlinalg::rational::rank(&self.restrict()) / phi
    }

    /// Entrywise complex embedding.
    pub fn embed(&self, prec: u32) -> Vec<Vec<CBall>> {
        let roots = crate::roots(self.n, prec + 16);
        (0..self.rows).map(|i| self.row(i).iter().map(|x| x.embed_with(&roots, prec)).collect()).collect()
    }
}

impl fmt::Debug for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CycMatrix {}x{} over Q(zeta_{})", self.rows, self.cols, self.n)?;
        for i in 0..self.rows {
            let r: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", r.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    conductor: u64,
    rows: Vec<Vec<Vec<String>>>,
}

impl Serialize for CycMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let rows = (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.coeffs().iter().map(|c| c.to_string()).collect()).collect())
            .collect();
        Wire { conductor: self.n, rows }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let w = Wire::deserialize(d)?;
        if w.conductor == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        let phi = CycNum::zero().lift(w.conductor).phi();
        let mut rows = Vec::new();
        for r in &w.rows {
            let mut row = Vec::new();
            for e in r {
                if e.len() != phi {
                    return Err(D::Error::custom(format!("expected {phi} coefficients, got {}", e.len())));
                }
                let c = e.iter().map(|s| s.parse::<BigRational>().map_err(D::Error::custom)).collect::<Result<Vec<_>, _>>()?;
                row.push(CycNum::from_poly(w.conductor, &c));
            }
            rows.push(row);
        }
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(D::Error::custom("ragged rows"));
        }
        Ok(CycMatrix::from_fn(rows.len(), cols, w.conductor, |i, j| rows[i][j].clone()))
    }
}
