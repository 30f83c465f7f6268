use std::fmt;

use serde::{Deserialize, Serialize};
use zlinalg::numth::{ext_gcd_i64, gcd_u64, inv_mod_u64};

use crate::Sl2Error;

/// An element `(a b; c d)` of `GL2(Z/NZ)`, entries reduced to `0..N`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GL2Element {
    pub n: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

fn red(x: i64, n: u64) -> u64 {
    x.rem_euclid(n as i64) as u64
}

impl GL2Element {
    pub fn new(n: u64, [a, b, c, d]: [i64; 4]) -> Result<GL2Element, Sl2Error> {
        assert!(n > 0, "modulus must be positive");
        let g = GL2Element { n, a: red(a, n), b: red(b, n), c: red(c, n), d: red(d, n) };
        if gcd_u64(g.det(), n) != 1 {
            return Err(Sl2Error::NotUnit { det: g.det() as i64, n });
        }
        Ok(g)
    }

    pub fn identity(n: u64) -> GL2Element {
        GL2Element { n, a: 1 % n, b: 0, c: 0, d: 1 % n }
    }

    pub fn scalar(n: u64, x: i64) -> Result<GL2Element, Sl2Error> {
        GL2Element::new(n, [x, 0, 0, x])
    }

    pub fn s(n: u64) -> GL2Element {
        GL2Element { n, a: 0, b: red(-1, n), c: 1 % n, d: 0 }
    }

    pub fn t(n: u64) -> GL2Element {
        GL2Element { n, a: 1 % n, b: 1 % n, c: 0, d: 1 % n }
    }

    /// `(1 0; 0 d)`.
    pub fn diag(n: u64, d: i64) -> Result<GL2Element, Sl2Error> {
        GL2Element::new(n, [1, 0, 0, d])
    }

    pub fn entries(&self) -> [u64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn det(&self) -> u64 {
        let n = self.n as u128;
        let ad = self.a as u128 * self.d as u128 % n;
        let bc = self.b as u128 * self.c as u128 % n;
        ((ad + n - bc) % n) as u64
    }

    pub fn mul(&self, o: &GL2Element) -> GL2Element {
        assert_eq!(self.n, o.n, "modulus mismatch");
        let n = self.n as u128;
        let f = |x: u64, y: u64, z: u64, w: u64| ((x as u128 * y as u128 + z as u128 * w as u128) % n) as u64;
        GL2Element {
            n: self.n,
            a: f(self.a, o.a, self.b, o.c),
            b: f(self.a, o.b, self.b, o.d),
            c: f(self.c, o.a, self.d, o.c),
            d: f(self.c, o.b, self.d, o.d),
        }
    }

    pub fn inverse(&self) -> GL2Element {
        let n = self.n;
        let u = inv_mod_u64(self.det(), n).expect("determinant is a unit") as u128;
        let m = n as u128;
        let f = |x: u64| (u * x as u128 % m) as u64;
        let neg = |x: u64| (n - x) % n;
        GL2Element { n, a: f(self.d), b: f(neg(self.b)), c: f(neg(self.c)), d: f(self.a) }
    }

    pub fn pow(&self, mut e: u64) -> GL2Element {
        let mut acc = GL2Element::identity(self.n);
        let mut base = *self;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        *self == GL2Element::identity(self.n)
    }

    /// `A = gamma (1 0; 0 det A)` with `gamma` in `SL2(Z/NZ)`.
    pub fn factor(&self) -> (GL2Element, u64) {
        let det = self.det();
        let inv = inv_mod_u64(det, self.n).expect("determinant is a unit");
        let diag = GL2Element { n: self.n, a: 1 % self.n, b: 0, c: 0, d: inv };
        (self.mul(&diag), det)
    }
}

impl fmt::Debug for GL2Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]] mod {}", self.a, self.b, self.c, self.d, self.n)
    }
}

/// A matrix in `SL2(Z)` reducing to `g` modulo `N`.
pub fn lift_sl2(g: &GL2Element) -> Result<[[i64; 2]; 2], Sl2Error> {
    let n = g.n as i64;
    if g.det() != 1 % g.n {
        return Err(Sl2Error::DetNotOne(g.det() as i64));
    }
    if n == 1 {
        return Ok([[1, 0], [0, 1]]);
    }
    let c = if g.c == 0 { n } else { g.c as i64 };
    // gcd(c, d, N) = 1, so some d + tN is prime to c
    let mut d = g.d as i64;
    while gcd_u64(c as u64, d.unsigned_abs()) != 1 {
        d += n;
    }
    let (_, x, y) = ext_gcd_i64(d, c);
    // x d + y c = 1, so (x, -y; c, d) is in SL2(Z)
    let (a0, b0) = (x, -y);
    for t in 0..n {
        let a = a0 + t * c;
        let b = b0 + t * d;
        if red(a, g.n) == g.a && red(b, g.n) == g.b {
            return Ok([[a, b], [c, d]]);
        }
    }
    unreachable!("top rows of determinant 1 differ by a multiple of the bottom row")
}
