use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::mag::Mag;

/// A real ball `[mid*2^exp - rad, mid*2^exp + rad]`.
///
/// `prec` is the number of midpoint bits kept after each operation. Results
/// take the larger precision of their operands.
#[derive(Clone, PartialEq, Eq)]
pub struct Ball {
    mid: BigInt,
    exp: i64,
    rad: Mag,
    prec: u32,
}

fn bitlen(x: &BigInt) -> i64 {
    x.bits() as i64
}

impl Ball {
    pub fn zero(prec: u32) -> Ball {
        Ball { mid: BigInt::zero(), exp: 0, rad: Mag::ZERO, prec }
    }

    pub fn one(prec: u32) -> Ball {
        Ball::from_int(1, prec)
    }

    pub fn from_int(x: i64, prec: u32) -> Ball {
        Ball::from_bigint(BigInt::from(x), prec)
    }

    pub fn from_bigint(x: BigInt, prec: u32) -> Ball {
        Ball { mid: x, exp: 0, rad: Mag::ZERO, prec }.round()
    }

    /// The exact dyadic `m * 2^e`.
    pub fn from_dyadic(m: BigInt, e: i64, prec: u32) -> Ball {
        Ball { mid: m, exp: e, rad: Mag::ZERO, prec }.round()
    }

    pub fn from_rational(x: &BigRational, prec: u32) -> Ball {
        let n = Ball { mid: x.numer().clone(), exp: 0, rad: Mag::ZERO, prec: u32::MAX };
        let d = Ball { mid: x.denom().clone(), exp: 0, rad: Mag::ZERO, prec: u32::MAX };
        let mut q = n.div_prec(&d, prec).expect("rational with nonzero denominator");
        q.prec = prec;
        q
    }

    /// Midpoint `m` and radius `r` given as `f64`, widened to absorb the
    /// conversion. Used only to seed iterations that are certified later.
    pub fn from_f64(x: f64, prec: u32) -> Ball {
        assert!(x.is_finite());
        if x == 0.0 {
            return Ball::zero(prec);
        }
        let (m, e) = decode_f64(x);
        Ball::from_dyadic(BigInt::from(m), e as i64, prec)
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn with_prec(mut self, prec: u32) -> Ball {
        self.prec = prec;
        self.round()
    }

    pub fn mid(&self) -> (&BigInt, i64) {
        (&self.mid, self.exp)
    }

    pub fn rad(&self) -> Mag {
        self.rad
    }

    /// The exact midpoint as a zero-radius ball.
    pub fn mid_ball(&self) -> Ball {
        Ball { mid: self.mid.clone(), exp: self.exp, rad: Mag::ZERO, prec: self.prec }
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    /// Adds `r` to the radius.
    pub fn add_error(mut self, r: Mag) -> Ball {
        self.rad = self.rad.add_up(&r);
        self
    }

    /// Drops midpoint bits beyond the working precision and beyond what
    /// the radius makes meaningful, folding the truncation into the radius.
    fn round(mut self) -> Ball {
        if self.mid.is_zero() {
            self.exp = 0;
            return self;
        }
        let b = bitlen(&self.mid);
        let mut target = self.exp + (b - self.prec as i64).max(0);
        if let Some(t) = self.rad.top() {
            // keep about 40 bits below the radius
            target = target.max(t - 40);
        }
        let s = target - self.exp;
        if s > 0 {
            let s = s.min(b + 1);
            self.mid >>= s as usize;
            self.exp += s;
            self.rad = self.rad.add_up(&Mag::pow2(self.exp));
        }
        // strip trailing zeros so equal values have equal representations
        if let Some(tz) = self.mid.trailing_zeros() {
            if tz > 0 {
                self.mid >>= tz as usize;
                self.exp += tz as i64;
            }
        }
        if self.mid.is_zero() {
            self.exp = 0;
        }
        self
    }

    /// Upper bound for `|mid|`.
    pub fn mid_abs_up(&self) -> Mag {
        Mag::from_bigint_up(&self.mid, self.exp)
    }

    /// Upper bound for every `|x|` in the ball.
    pub fn abs_up(&self) -> Mag {
        self.mid_abs_up().add_up(&self.rad)
    }

    /// Lower bound for every `|x|` in the ball (zero if it contains 0).
    pub fn abs_down(&self) -> Mag {
        Mag::from_bigint_down(&self.mid, self.exp).sub_down(&self.rad)
    }

    pub fn contains_zero(&self) -> bool {
        self.abs_down().is_zero()
    }

    /// True if `x` lies in the ball.
    pub fn contains_rational(&self, x: &BigRational) -> bool {
        // |mid*2^exp - x| <= rad, compared exactly in rationals
        let d = (self.exact_mid() - x).abs();
        d <= mag_to_rational(&self.rad)
    }

    pub fn contains_int(&self, x: &BigInt) -> bool {
        self.contains_rational(&BigRational::from_integer(x.clone()))
    }

    /// The midpoint as an exact rational.
    pub fn exact_mid(&self) -> BigRational {
        dyadic_to_rational(&self.mid, self.exp)
    }

    /// Whether every point of `other` lies in `self`.
    pub fn contains(&self, other: &Ball) -> bool {
        let d = (self.exact_mid() - other.exact_mid()).abs();
        d + mag_to_rational(&other.rad) <= mag_to_rational(&self.rad)
    }

    pub fn overlaps(&self, other: &Ball) -> bool {
        let d = (self.exact_mid() - other.exact_mid()).abs();
        d <= mag_to_rational(&self.rad.add_up(&other.rad))
    }

    /// The unique integer in the ball if the radius is below `1/4`.
    pub fn unique_integer(&self) -> Option<BigInt> {
        if self.rad >= Mag::pow2(-2) {
            return None;
        }
        let n = self.round_nearest();
        self.contains_int(&n).then_some(n)
    }

    /// Midpoint rounded to the nearest integer.
    pub fn round_nearest(&self) -> BigInt {
        if self.exp >= 0 {
            return &self.mid << self.exp as usize;
        }
        let s = (-self.exp) as usize;
        let half = BigInt::one() << (s - 1);
        (&self.mid + half) >> s
    }

    pub fn to_f64(&self) -> f64 {
        if self.mid.is_zero() {
            return 0.0;
        }
        let b = bitlen(&self.mid);
        let s = (b - 60).max(0);
        let top = (&self.mid >> s as usize).to_f64().unwrap();
        top * 2f64.powi((self.exp + s).clamp(-4000, 4000) as i32)
    }

    pub fn neg(&self) -> Ball {
        Ball { mid: -&self.mid, exp: self.exp, rad: self.rad, prec: self.prec }
    }

    pub fn mul_2exp(&self, e: i64) -> Ball {
        Ball { mid: self.mid.clone(), exp: if self.mid.is_zero() { 0 } else { self.exp + e }, rad: self.rad.mul_2exp(e), prec: self.prec }
    }

    pub fn add(&self, o: &Ball) -> Ball {
        let prec = self.prec.max(o.prec);
        if o.mid.is_zero() {
            return Ball { mid: self.mid.clone(), exp: self.exp, rad: self.rad.add_up(&o.rad), prec }.round();
        }
        if self.mid.is_zero() {
            return Ball { mid: o.mid.clone(), exp: o.exp, rad: self.rad.add_up(&o.rad), prec }.round();
        }
        let mut rad = self.rad.add_up(&o.rad);
        let top = (self.exp + bitlen(&self.mid)).max(o.exp + bitlen(&o.mid));
        let cut = top - prec as i64 - 16;
        let mut parts = [(self.mid.clone(), self.exp), (o.mid.clone(), o.exp)];
        for (m, e) in parts.iter_mut() {
            if *e < cut {
                let s = (cut - *e) as usize;
                *m >>= s;
                *e = cut;
                rad = rad.add_up(&Mag::pow2(cut));
            }
        }
        let e = parts[0].1.min(parts[1].1);
        let a = &parts[0].0 << (parts[0].1 - e) as usize;
        let b = &parts[1].0 << (parts[1].1 - e) as usize;
        Ball { mid: a + b, exp: e, rad, prec }.round()
    }

    pub fn sub(&self, o: &Ball) -> Ball {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Ball) -> Ball {
        let prec = self.prec.max(o.prec);
        let am = self.mid_abs_up();
        let bm = o.mid_abs_up();
        let rad = am.mul_up(&o.rad).add_up(&bm.mul_up(&self.rad)).add_up(&self.rad.mul_up(&o.rad));
        Ball { mid: &self.mid * &o.mid, exp: self.exp + o.exp, rad, prec }.round()
    }

    pub fn mul_int(&self, k: &BigInt) -> Ball {
        let rad = self.rad.mul_up(&Mag::from_bigint_up(k, 0));
        Ball { mid: &self.mid * k, exp: self.exp, rad, prec: self.prec }.round()
    }

    pub fn sqr(&self) -> Ball {
        self.mul(self)
    }

    pub fn pow(&self, mut e: u64) -> Ball {
        let mut acc = Ball::one(self.prec);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.sqr();
            }
        }
        acc
    }

    /// `self / o`, or `None` if `o` contains zero.
    pub fn div(&self, o: &Ball) -> Option<Ball> {
        self.div_prec(o, self.prec.max(o.prec))
    }

    fn div_prec(&self, o: &Ball, prec: u32) -> Option<Ball> {
        let ylow = o.abs_down();
        if ylow.is_zero() {
            return None;
        }
        if self.mid.is_zero() && self.rad.is_zero() {
            return Some(Ball::zero(prec));
        }
        let shift = (prec as i64 + 8 + bitlen(&o.mid) - bitlen(&self.mid)).max(0);
        let q = (&self.mid << shift as usize) / &o.mid;
        let qexp = self.exp - shift - o.exp;
        // |x/y - xm/ym| <= (xr |ym| + |xm| yr) / (|ym| (|ym| - yr))
        let ym_down = Mag::from_bigint_down(&o.mid, o.exp);
        let num = self.rad.mul_up(&o.mid_abs_up()).add_up(&self.mid_abs_up().mul_up(&o.rad));
        let den = ym_down.mul_down(&ylow);
        let mut rad = if num.is_zero() { Mag::ZERO } else { num.div_up(&den) };
        rad = rad.add_up(&Mag::pow2(qexp));
        Some(Ball { mid: q, exp: qexp, rad, prec }.round())
    }

    pub fn inv(&self) -> Option<Ball> {
        Ball::one(self.prec).div(self)
    }

    /// Square root of a ball whose points are all positive.
    pub fn sqrt(&self) -> Option<Ball> {
        let low = self.abs_down();
        if self.mid.is_negative() || low.is_zero() {
            return None;
        }
        let prec = self.prec;
        let mut s = (2 * prec as i64 + 16 - bitlen(&self.mid)).max(0);
        if (self.exp - s) % 2 != 0 {
            s += 1;
        }
        let r = (&self.mid << s as usize).sqrt();
        let rexp = (self.exp - s) / 2;
        // |sqrt(x) - sqrt(xm)| <= xr / (2 sqrt(x_low))
        let mut rad = Mag::pow2(rexp);
        if !self.rad.is_zero() {
            rad = rad.add_up(&self.rad.div_up(&low.sqrt_down().mul_2exp(1)));
        }
        Some(Ball { mid: r, exp: rexp, rad, prec }.round())
    }

    /// `e^self`, by Taylor series after halving the argument.
    pub fn exp(&self) -> Ball {
        let prec = self.prec;
        let top = self.abs_up().top().unwrap_or(i64::MIN / 2);
        let r = (top + 8).max(0);
        let wprec = prec + r as u32 + 24;
        let y = self.clone().with_prec(wprec).mul_2exp(-r);
        let yabs = y.abs_up();
        let mut sum = Ball::one(wprec);
        let mut term = Ball::one(wprec);
        let mut k = 1u64;
        // |y| <= 2^-8, so the tail after the k-th term is at most 2|term|
        loop {
            term = term.mul(&y).div(&Ball::from_int(k as i64, wprec)).unwrap();
            sum = sum.add(&term);
            k += 1;
            let bound = term.abs_up().mul_up(&yabs);
            if bound.is_zero() || bound.top().unwrap() < -(wprec as i64) - 4 {
                sum = sum.add_error(bound.mul_2exp(1));
                break;
            }
        }
        for _ in 0..r {
            sum = sum.sqr();
        }
        sum.with_prec(prec)
    }

    /// Strict comparison valid for every point: `Some(true)` if all of
    /// `self` lies below all of `o`.
    pub fn lt(&self, o: &Ball) -> Option<bool> {
        let d = o.sub(self);
        if d.contains_zero() {
            None
        } else {
            Some(d.mid.is_positive())
        }
    }

    pub fn is_positive(&self) -> bool {
        self.mid.is_positive() && !self.contains_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mid.is_negative() && !self.contains_zero()
    }

    /// The union hull of two balls.
    pub fn union(&self, o: &Ball) -> Ball {
        let a = self.exact_mid();
        let b = o.exact_mid();
        let lo = (a.clone() - mag_to_rational(&self.rad)).min(b.clone() - mag_to_rational(&o.rad));
        let hi = (a + mag_to_rational(&self.rad)).max(b + mag_to_rational(&o.rad));
        let prec = self.prec.max(o.prec);
        let mid = Ball::from_rational(&((&lo + &hi) / BigRational::from_integer(2.into())), prec);
        let half = (hi - lo) / BigRational::from_integer(2.into());
        let r = Ball::from_rational(&half, 64).abs_up();
        mid.add_error(r)
    }
}

pub(crate) fn dyadic_to_rational(m: &BigInt, e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(m << e as usize)
    } else {
        BigRational::new(m.clone(), BigInt::one() << (-e) as usize)
    }
}

pub(crate) fn mag_to_rational(m: &Mag) -> BigRational {
    let (b, e) = m.to_bigint_exp();
    dyadic_to_rational(&b, e)
}

fn decode_f64(x: f64) -> (i64, i32) {
    let bits = x.to_bits();
    let sign = if bits >> 63 == 0 { 1 } else { -1 };
    let exponent = ((bits >> 52) & 0x7ff) as i32;
    let mantissa = if exponent == 0 { (bits & 0xfffffffffffff) << 1 } else { (bits & 0xfffffffffffff) | 0x10000000000000 };
    (sign * mantissa as i64, exponent - 1075)
}

/// `pi` by Machin's formula in fixed point.
pub fn pi(prec: u32) -> Ball {
    let w = prec as usize + 32;
    let one = BigInt::one() << w;
    let atan_inv = |n: u64| -> (BigInt, u64) {
        // sum_k (-1)^k / ((2k+1) n^(2k+1)), each term truncated (error < 1)
        let n2 = BigInt::from(n * n);
        let mut pow = &one / n;
        let mut sum = BigInt::zero();
        let mut k = 0u64;
        while !pow.is_zero() {
            let t = &pow / (2 * k + 1);
            if k % 2 == 0 {
                sum += t;
            } else {
                sum -= t;
            }
            pow /= &n2;
            k += 1;
        }
        (sum, k + 1)
    };
    let (a5, k5) = atan_inv(5);
    let (a239, k239) = atan_inv(239);
    let mid = a5 * 16 - a239 * 4;
    // truncation errors plus the omitted alternating tails (below 1 unit each)
    let err = Mag::from_u64(16 * (k5 + 1) + 4 * (k239 + 1)).mul_2exp(-(w as i64));
    Ball { mid, exp: -(w as i64), rad: err, prec }.round()
}

impl fmt::Debug for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.17e} +/- {:.3e}]", self.to_f64(), self.rad.to_f64())
    }
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
