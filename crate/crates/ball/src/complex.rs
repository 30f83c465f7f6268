use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::mag::Mag;
use crate::real::{pi, Ball};

/// A complex ball as a rectangle of two real balls.
#[derive(Clone, PartialEq, Eq)]
pub struct CBall {
    pub re: Ball,
    pub im: Ball,
}

impl CBall {
    pub fn new(re: Ball, im: Ball) -> CBall {
        CBall { re, im }
    }

    pub fn zero(prec: u32) -> CBall {
        CBall { re: Ball::zero(prec), im: Ball::zero(prec) }
    }

    pub fn one(prec: u32) -> CBall {
        CBall { re: Ball::one(prec), im: Ball::zero(prec) }
    }

    pub fn i(prec: u32) -> CBall {
        CBall { re: Ball::zero(prec), im: Ball::one(prec) }
    }

    pub fn from_real(re: Ball) -> CBall {
        let p = re.prec();
        CBall { re, im: Ball::zero(p) }
    }

    pub fn from_int(x: i64, prec: u32) -> CBall {
        CBall::from_real(Ball::from_int(x, prec))
    }

    pub fn from_rational(x: &BigRational, prec: u32) -> CBall {
        CBall::from_real(Ball::from_rational(x, prec))
    }

    pub fn mid_ball(&self) -> CBall {
        CBall { re: self.re.mid_ball(), im: self.im.mid_ball() }
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(self, prec: u32) -> CBall {
        CBall { re: self.re.with_prec(prec), im: self.im.with_prec(prec) }
    }

    pub fn add(&self, o: &CBall) -> CBall {
        CBall { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &CBall) -> CBall {
        CBall { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn neg(&self) -> CBall {
        CBall { re: self.re.neg(), im: self.im.neg() }
    }

    pub fn conj(&self) -> CBall {
        CBall { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn mul(&self, o: &CBall) -> CBall {
        let re = self.re.mul(&o.re).sub(&self.im.mul(&o.im));
        let im = self.re.mul(&o.im).add(&self.im.mul(&o.re));
        CBall { re, im }
    }

    pub fn sqr(&self) -> CBall {
        self.mul(self)
    }

    pub fn mul_real(&self, r: &Ball) -> CBall {
        CBall { re: self.re.mul(r), im: self.im.mul(r) }
    }

    pub fn mul_int(&self, k: &BigInt) -> CBall {
        CBall { re: self.re.mul_int(k), im: self.im.mul_int(k) }
    }

    pub fn mul_2exp(&self, e: i64) -> CBall {
        CBall { re: self.re.mul_2exp(e), im: self.im.mul_2exp(e) }
    }

    /// Multiplication by `i^k`.
    pub fn mul_i_pow(&self, k: i64) -> CBall {
        match k.rem_euclid(4) {
            0 => self.clone(),
            1 => CBall { re: self.im.neg(), im: self.re.clone() },
            2 => self.neg(),
            _ => CBall { re: self.im.clone(), im: self.re.neg() },
        }
    }

    pub fn abs_sqr(&self) -> Ball {
        self.re.sqr().add(&self.im.sqr())
    }

    /// `None` if the divisor may be zero.
    pub fn div(&self, o: &CBall) -> Option<CBall> {
        let n = o.abs_sqr();
        let inv = n.inv()?;
        Some(self.mul(&o.conj()).mul_real(&inv))
    }

    pub fn inv(&self) -> Option<CBall> {
        CBall::one(self.prec()).div(self)
    }

    pub fn pow(&self, mut e: u64) -> CBall {
        let mut acc = CBall::one(self.prec());
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

    pub fn contains_zero(&self) -> bool {
        self.re.contains_zero() && self.im.contains_zero()
    }

    /// Upper bound on `|z|` over the ball.
    pub fn abs_up(&self) -> Mag {
        let r = self.re.abs_up();
        let i = self.im.abs_up();
        r.mul_up(&r).add_up(&i.mul_up(&i)).sqrt_up()
    }

    /// Lower bound on `|z|` over the ball.
    pub fn abs_down(&self) -> Mag {
        let r = self.re.abs_down();
        let i = self.im.abs_down();
        r.mul_down(&r).add_down(&i.mul_down(&i)).sqrt_down()
    }

    /// Largest of the two component radii.
    pub fn rad(&self) -> Mag {
        self.re.rad().max(self.im.rad())
    }

    pub fn contains(&self, o: &CBall) -> bool {
        self.re.contains(&o.re) && self.im.contains(&o.im)
    }

    pub fn overlaps(&self, o: &CBall) -> bool {
        self.re.overlaps(&o.re) && self.im.overlaps(&o.im)
    }

    pub fn contains_point(&self, re: &BigRational, im: &BigRational) -> bool {
        self.re.contains_rational(re) && self.im.contains_rational(im)
    }

    /// Whether the ball meets the unit circle.
    pub fn meets_unit_circle(&self) -> bool {
        let one = Mag::from_u64(1);
        self.abs_down() <= one && one <= self.abs_up()
    }

    pub fn add_error(self, r: Mag) -> CBall {
        CBall { re: self.re.add_error(r), im: self.im.add_error(r) }
    }

    pub fn union(&self, o: &CBall) -> CBall {
        CBall { re: self.re.union(&o.re), im: self.im.union(&o.im) }
    }

    /// `e^self` by Taylor series after halving the argument.
    pub fn exp(&self) -> CBall {
        let prec = self.prec();
        let top = self.abs_up().top().unwrap_or(i64::MIN / 2);
        let r = (top + 8).max(0);
        let wprec = prec + 2 * r as u32 + 24;
        let y = self.clone().with_prec(wprec).mul_2exp(-r);
        let yabs = y.abs_up();
        let mut sum = CBall::one(wprec);
        let mut term = CBall::one(wprec);
        let mut k = 1i64;
        loop {
            let inv_k = Ball::one(wprec).div(&Ball::from_int(k, wprec)).unwrap();
            term = term.mul(&y).mul_real(&inv_k);
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

    /// `e^{i theta}` for a real ball `theta`.
    pub fn exp_i(theta: &Ball) -> CBall {
        CBall { re: Ball::zero(theta.prec()), im: theta.clone() }.exp()
    }

    /// `e^{2 pi i k / n}`.
    pub fn root_of_unity(k: i64, n: u64, prec: u32) -> CBall {
        let n = n as i64;
        let k = k.rem_euclid(n);
        // Exact values at the quarter turns keep radii at zero there.
        if 4 * k % n == 0 {
            return CBall::one(prec).mul_i_pow(4 * k / n);
        }
        let wprec = prec + 16;
        let theta = pi(wprec).mul_int(&BigInt::from(2 * k)).div(&Ball::from_int(n, wprec)).unwrap();
        CBall::exp_i(&theta).with_prec(prec)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

/// Table of `zeta_n^j = e^{2 pi i j / n}` for `0 <= j < n`.
pub fn roots_of_unity(n: u64, prec: u32) -> Vec<CBall> {
    let wprec = prec + 8 + 64 - n.leading_zeros();
    let z = CBall::root_of_unity(1, n, wprec);
    let mut out = Vec::with_capacity(n as usize);
    let mut cur = CBall::one(wprec);
    for j in 0..n {
        // refresh from the exact quarter-turn values where available
        if j > 0 && (4 * j) % n == 0 {
            cur = CBall::one(wprec).mul_i_pow((4 * j / n) as i64);
        }
        out.push(cur.clone().with_prec(prec));
        cur = cur.mul(&z);
    }
    out
}

impl fmt::Debug for CBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}i)", self.re, self.im)
    }
}

impl fmt::Display for CBall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
