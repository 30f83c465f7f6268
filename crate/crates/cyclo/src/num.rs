use std::fmt;

use ball::CBall;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use zlinalg::numth::{gcd_u64, lcm_u64};

use crate::table::{table, Table};
use crate::CycloError;

/// An element `(sum c_i zeta_n^i) / den` of `Q(zeta_n)` in the power basis
/// `1, zeta_n, ..., zeta_n^(phi(n)-1)`.
///
/// Numerators are kept integral with a positive common denominator in
/// lowest terms. Binary operations lift both operands to the lcm of their
/// conductors, and equality compares after lifting.
#[derive(Clone)]
pub struct CycNum {
    n: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycNum {
    pub fn zero() -> CycNum {
        CycNum { n: 1, num: vec![BigInt::zero()], den: BigInt::one() }
    }

    pub fn one() -> CycNum {
        CycNum::from_int(1)
    }

    pub fn from_int(x: impl Into<BigInt>) -> CycNum {
        CycNum { n: 1, num: vec![x.into()], den: BigInt::one() }
    }

    pub fn from_rational(x: &BigRational) -> CycNum {
        CycNum { n: 1, num: vec![x.numer().clone()], den: x.denom().clone() }
    }

    /// `zeta_n^k`.
    pub fn zeta_pow(n: u64, k: i64) -> CycNum {
        assert!(n > 0, "conductor must be positive");
        let t = table(n);
        let k = k.rem_euclid(n as i64) as usize;
        CycNum { n, num: t.powers[k].iter().map(|&c| BigInt::from(c)).collect(), den: BigInt::one() }
    }

    pub fn zeta(n: u64) -> CycNum {
        CycNum::zeta_pow(n, 1)
    }

    /// `sum c_j zeta_n^j` for an arbitrary-length coefficient list.
    pub fn from_poly(n: u64, coeffs: &[BigRational]) -> CycNum {
        let t = table(n);
        let den = coeffs.iter().fold(BigInt::one(), |d, c| d.lcm(c.denom()));
        let mut num = vec![BigInt::zero(); t.phi];
        for (j, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let cj = c.numer() * (&den / c.denom());
            add_scaled_row(&mut num, &t.powers[j % n as usize], &cj);
        }
        CycNum { n, num, den }.normalized()
    }

    /// Integer coefficients in the power basis.
    pub fn from_int_coeffs(n: u64, coeffs: &[BigInt]) -> CycNum {
        let t = table(n);
        let mut num = vec![BigInt::zero(); t.phi];
        for (j, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                add_scaled_row(&mut num, &t.powers[j % n as usize], c);
            }
        }
        CycNum { n, num, den: BigInt::one() }
    }

    pub fn conductor(&self) -> u64 {
        self.n
    }

    pub fn phi(&self) -> usize {
        self.num.len()
    }

    /// Power-basis coefficients as rationals (length `phi(n)`).
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(|c| c.is_zero())
    }

    /// True if the element lies in `Z[zeta_n]`.
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    /// The element as a rational number, if it is one.
    pub fn to_rational(&self) -> Option<BigRational> {
        self.num[1..].iter().all(|c| c.is_zero()).then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    fn normalized(mut self) -> CycNum {
        if self.den.is_negative() {
            self.den = -&self.den;
            for c in self.num.iter_mut() {
                *c = -&*c;
            }
        }
        if self.den.is_one() {
            return self;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if !g.is_one() {
            for c in self.num.iter_mut() {
                *c = &*c / &g;
            }
            self.den = &self.den / &g;
        }
        self
    }

    /// The same element expressed at conductor `m`, a multiple of `n`.
    pub fn lift(&self, m: u64) -> CycNum {
        if m == self.n {
            return self.clone();
        }
        assert!(m % self.n == 0, "cannot lift conductor {} to {}", self.n, m);
        let t = table(m);
        let step = (m / self.n) as usize;
        let mut num = vec![BigInt::zero(); t.phi];
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                add_scaled_row(&mut num, &t.powers[i * step % m as usize], c);
            }
        }
        CycNum { n: m, num, den: self.den.clone() }
    }

    fn lifted_pair(&self, o: &CycNum) -> (CycNum, CycNum) {
        let m = lcm_u64(self.n, o.n);
        (self.lift(m), o.lift(m))
    }

    pub fn add(&self, o: &CycNum) -> CycNum {
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return o.clone();
        }
        let (a, b) = self.lifted_pair(o);
        let l = a.den.lcm(&b.den);
        let fa = &l / &a.den;
        let fb = &l / &b.den;
        let num = a.num.iter().zip(&b.num).map(|(x, y)| x * &fa + y * &fb).collect();
        CycNum { n: a.n, num, den: l }.normalized()
    }

    pub fn neg(&self) -> CycNum {
        CycNum { n: self.n, num: self.num.iter().map(|c| -c).collect(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &CycNum) -> CycNum {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &CycNum) -> CycNum {
        if self.is_zero() || o.is_zero() {
            return CycNum::zero();
        }
        if let Some(r) = o.to_rational() {
            return self.scale(&r);
        }
        if let Some(r) = self.to_rational() {
            return o.scale(&r);
        }
        let (a, b) = self.lifted_pair(o);
        let t = table(a.n);
        let num = mul_reduce(&t, &a.num, &b.num);
        CycNum { n: a.n, num, den: &a.den * &b.den }.normalized()
    }

    pub fn scale(&self, r: &BigRational) -> CycNum {
        if r.is_zero() {
            return CycNum::zero();
        }
        CycNum { n: self.n, num: self.num.iter().map(|c| c * r.numer()).collect(), den: &self.den * r.denom() }.normalized()
    }

    pub fn scale_int(&self, k: &BigInt) -> CycNum {
        self.scale(&BigRational::from_integer(k.clone()))
    }

    pub fn pow(&self, mut e: u64) -> CycNum {
        let mut acc = CycNum::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `sigma_d`: `zeta_n -> zeta_n^d`, with `gcd(d, n) = 1`.
    pub fn galois(&self, d: i64) -> CycNum {
        let n = self.n;
        let d = d.rem_euclid(n as i64) as u64;
        assert_eq!(gcd_u64(d, n), 1, "sigma_{d} is not an automorphism of Q(zeta_{n})");
        if d == 1 % n {
            return self.clone();
        }
        let t = table(n);
        let mut num = vec![BigInt::zero(); t.phi];
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                add_scaled_row(&mut num, &t.powers[(i as u64 * d % n) as usize], c);
            }
        }
        CycNum { n, num, den: self.den.clone() }
    }

    /// Complex conjugation, `sigma_{-1}`.
    pub fn conj(&self) -> CycNum {
        self.galois(-1)
    }

    /// `Tr_{Q(zeta_n)/Q}`.
    pub fn trace(&self) -> BigRational {
        let t = table(self.n);
        let s: BigInt = self.num.iter().zip(&t.traces).map(|(c, &tr)| c * tr).sum();
        BigRational::new(s, self.den.clone())
    }

    /// Norm to Q and the product of the nontrivial conjugates.
    fn norm_and_cofactor(&self) -> (BigRational, CycNum) {
        let n = self.n;
        let mut co = CycNum::one();
        for d in 2..n {
            if gcd_u64(d, n) == 1 {
                co = co.mul(&self.galois(d as i64));
            }
        }
        let nm = self.mul(&co).to_rational().expect("the norm is rational");
        (nm, co)
    }

    pub fn norm(&self) -> BigRational {
        self.norm_and_cofactor().0
    }

    pub fn inv(&self) -> Result<CycNum, CycloError> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        if let Some(r) = self.to_rational() {
            return Ok(CycNum::from_rational(&r.recip()));
        }
        let (nm, co) = self.norm_and_cofactor();
        Ok(co.scale(&nm.recip()))
    }

    pub fn div(&self, o: &CycNum) -> Result<CycNum, CycloError> {
        Ok(self.mul(&o.inv()?))
    }

    /// The unique `x` with `Tr(zeta_n^b x) = traces[b]` for `0 <= b < phi(n)`.
    pub fn trace_reconstruct(traces: &[BigRational], n: u64) -> Result<CycNum, CycloError> {
        let t = table(n);
        if traces.len() != t.phi {
            return Err(CycloError::Length { expected: t.phi, got: traces.len() });
        }
        let g = t.gram_inverse();
        let coeffs: Vec<BigRational> = (0..t.phi)
            .map(|a| (0..t.phi).fold(BigRational::zero(), |acc, b| acc + &g[(a, b)] * &traces[b]))
            .collect();
        Ok(CycNum::from_poly(n, &coeffs))
    }

    /// Image under `zeta_n -> e^{2 pi i / n}` as a certified complex ball.
    pub fn embed(&self, prec: u32) -> CBall {
        let roots = crate::embed::roots(self.n, prec + 16);
        self.embed_with(&roots, prec)
    }

    /// Embedding with a caller-supplied table of `e^{2 pi i j / n}`.
    pub fn embed_with(&self, roots: &[CBall], prec: u32) -> CBall {
        let wprec = prec + 16;
        let mut acc = CBall::zero(wprec);
        for (i, c) in self.num.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&roots[i].mul_int(c));
            }
        }
        if !self.den.is_one() {
            let d = ball::Ball::from_bigint(self.den.clone(), wprec);
            acc = CBall::new(acc.re.div(&d).unwrap(), acc.im.div(&d).unwrap());
        }
        acc.with_prec(prec)
    }

    /// Smallest conductor `m | n` with the element in `Q(zeta_m)`.
    pub fn minimal_conductor(&self) -> u64 {
        let n = self.n;
        let mut best = n;
        for m in zlinalg::numth::divisors(n) {
            if m >= best {
                break;
            }
            // x lies in Q(zeta_m) iff it is fixed by every sigma_d with d = 1 mod m
            let fixed = (1..n).filter(|&d| gcd_u64(d, n) == 1 && d % m == 1 % m).all(|d| self.galois(d as i64) == *self);
            if fixed {
                best = m;
            }
        }
        best
    }

    /// The same element at its minimal conductor (up to `Q(zeta_m) = Q(zeta_2m)` for odd `m`).
    pub fn reduce_conductor(&self) -> CycNum {
        let m = self.minimal_conductor();
        if m == self.n {
            return self.clone();
        }
        // Recover power-basis coefficients at conductor m through the trace pairing.
        let tm = table(m);
        let traces: Vec<BigRational> = (0..tm.phi)
            .map(|b| {
                let prod = self.mul(&CycNum::zeta_pow(m, b as i64));
                prod.trace() * BigRational::new(BigInt::from(tm.phi as u64), BigInt::from(self.phi() as u64))
            })
            .collect();
        CycNum::trace_reconstruct(&traces, m).expect("length matches")
    }
}

fn add_scaled_row(acc: &mut [BigInt], row: &[i64], c: &BigInt) {
    for (a, &r) in acc.iter_mut().zip(row) {
        match r {
            0 => {}
            1 => *a += c,
            -1 => *a -= c,
            _ => *a += c * r,
        }
    }
}

fn mul_reduce(t: &Table, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let phi = t.phi;
    let mut full = vec![BigInt::zero(); 2 * phi - 1];
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
    let mut out: Vec<BigInt> = full.drain(..phi).collect();
    for (k, c) in full.iter().enumerate() {
        if !c.is_zero() {
            add_scaled_row(&mut out, &t.powers[(phi + k) % t.n as usize], c);
        }
    }
    out
}

impl PartialEq for CycNum {
    fn eq(&self, o: &CycNum) -> bool {
        if self.n == o.n {
            return self.den == o.den && self.num == o.num;
        }
        let (a, b) = self.lifted_pair(o);
        a.den == b.den && a.num == b.num
    }
}

impl Eq for CycNum {}

impl Default for CycNum {
    fn default() -> Self {
        CycNum::zero()
    }
}

impl From<i64> for CycNum {
    fn from(x: i64) -> Self {
        CycNum::from_int(x)
    }
}

impl fmt::Display for CycNum {
    /// Polynomial in `z = zeta_n`, highest power first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.num.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let r = BigRational::new(c.clone(), self.den.clone());
            let mag = r.abs();
            let body = match (i, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => "z".to_string(),
                (1, false) => format!("{mag}*z"),
                (_, true) => format!("z^{i}"),
                (_, false) => format!("{mag}*z^{i}"),
            };
            terms.push((r.is_negative(), body));
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (neg, body)) in terms.iter().enumerate() {
            match (k, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [z=zeta_{}]", self, self.n)
    }
}

#[derive(Serialize, Deserialize)]
struct Wire {
    conductor: u64,
    coeffs: Vec<String>,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        Wire { conductor: self.n, coeffs: self.coeffs().iter().map(|c| c.to_string()).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let w = Wire::deserialize(d)?;
        if w.conductor == 0 {
            return Err(serde::de::Error::custom("conductor must be positive"));
        }
        let coeffs = w
            .coeffs
            .iter()
            .map(|c| c.parse::<BigRational>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        let phi = table(w.conductor).phi;
        if coeffs.len() != phi {
            return Err(serde::de::Error::custom(format!("expected {phi} coefficients, got {}", coeffs.len())));
        }
        Ok(CycNum::from_poly(w.conductor, &coeffs))
    }
}

impl std::ops::Add for &CycNum {
    type Output = CycNum;
    fn add(self, o: &CycNum) -> CycNum {
        CycNum::add(self, o)
    }
}

impl std::ops::Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, o: &CycNum) -> CycNum {
        CycNum::sub(self, o)
    }
}

impl std::ops::Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, o: &CycNum) -> CycNum {
        CycNum::mul(self, o)
    }
}

impl std::ops::Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum::neg(self)
    }
}
