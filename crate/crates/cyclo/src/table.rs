//! Per-conductor data: the cyclotomic polynomial, reductions of every
//! power of zeta, trace values and the inverse Gram matrix of the trace form.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use zlinalg::numth::{divisors, euler_phi, gcd_u64, moebius};
use zlinalg::QMatrix;

pub(crate) struct Table {
    pub n: u64,
    pub phi: usize,
    /// Coefficients of `Phi_n`, constant term first (monic, length phi+1).
    pub poly: Vec<i64>,
    /// `zeta^k` in the power basis for `0 <= k < n`.
    pub powers: Vec<Vec<i64>>,
    /// `Tr(zeta^k)` for `0 <= k < n`.
    pub traces: Vec<i64>,
    gram_inv: OnceLock<QMatrix>,
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact quotient of `a` by a monic `b`.
fn poly_div_exact(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db].clone();
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[i + j] -= &c * bj;
        }
        q[i] = c;
    }
    debug_assert!(r.iter().all(|x| x.is_zero()));
    q
}

fn cyclotomic_poly(n: u64) -> Vec<i64> {
    // Phi_n = prod_{d | n} (x^d - 1)^{mu(n/d)}
    let mut num = vec![BigInt::from(1)];
    let mut den = vec![BigInt::from(1)];
    for d in divisors(n) {
        let mut f = vec![BigInt::zero(); d as usize + 1];
        f[0] = BigInt::from(-1);
        f[d as usize] = BigInt::from(1);
        match moebius(n / d) {
            1 => num = poly_mul(&num, &f),
            -1 => den = poly_mul(&den, &f),
            _ => {}
        }
    }
    let q = poly_div_exact(&num, &den);
    q.iter().map(|c| c.to_i64().expect("cyclotomic coefficient fits in i64")).collect()
}

impl Table {
    fn build(n: u64) -> Table {
        let phi = euler_phi(n) as usize;
        let poly = cyclotomic_poly(n);
        assert_eq!(poly.len(), phi + 1);
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![0i64; phi];
        cur[0] = 1;
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x and reduce with x^phi = -sum poly[i] x^i
            let top = cur[phi - 1];
            for i in (1..phi).rev() {
                cur[i] = cur[i - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for i in 0..phi {
                    cur[i] = cur[i].checked_sub(top.checked_mul(poly[i]).unwrap()).unwrap();
                }
            }
        }
        let traces = (0..n)
            .map(|k| {
                // Ramanujan sum c_n(k)
                let g = gcd_u64(k, n);
                let m = n / g;
                moebius(m) * (phi as i64) / euler_phi(m) as i64
            })
            .collect();
        Table { n, phi, poly, powers, traces, gram_inv: OnceLock::new() }
    }

    /// Inverse of `G[a][b] = Tr(zeta^(a+b))`.
    pub fn gram_inverse(&self) -> &QMatrix {
        self.gram_inv.get_or_init(|| {
            let phi = self.phi;
            let g = QMatrix::from_fn(phi, phi, |a, b| {
                BigRational::from_integer(self.traces[(a + b) % self.n as usize].into())
            });
            zlinalg::rational::inverse(&g).expect("the trace form is nondegenerate")
        })
    }
}

pub(crate) fn table(n: u64) -> Arc<Table> {
    static TABLES: OnceLock<Mutex<HashMap<u64, Arc<Table>>>> = OnceLock::new();
    let map = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = map.lock().unwrap().get(&n) {
        return t.clone();
    }
    let t = Arc::new(Table::build(n));
    map.lock().unwrap().entry(n).or_insert(t).clone()
}

/// Coefficients of the `n`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    table(n).poly.clone()
}
