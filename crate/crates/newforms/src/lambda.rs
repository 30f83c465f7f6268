use ball::{pi, Ball, CBall, Mag};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::{EmbeddedNewform, NewformError};

/// A certified ball around `lambda_N(f)`.
#[derive(Clone, Debug)]
pub struct PseudoEigenvalue {
    pub value: CBall,
    pub b_used: BigRational,
    pub terms_used: usize,
    pub precision: u32,
}

#[derive(Serialize)]
struct Wire {
    re: f64,
    im: f64,
    radius_log2: f64,
    b: String,
    terms: usize,
    precision: u32,
}

impl Serialize for PseudoEigenvalue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (re, im) = self.value.to_f64();
        Wire {
            re,
            im,
            radius_log2: self.value.rad().log2(),
            b: self.b_used.to_string(),
            terms: self.terms_used,
            precision: self.precision,
        }
        .serialize(s)
    }
}

/// Evaluation points tried in order: `1, 1.1, 0.9, 1.2, 0.8, ...`.
pub fn b_schedule() -> Vec<BigRational> {
    let mut out = vec![BigRational::from_integer(1.into())];
    let mut step = 1;
    while out.len() < 8 {
        out.push(BigRational::new(BigInt::from(10 + step), BigInt::from(10)));
        if out.len() < 8 {
            out.push(BigRational::new(BigInt::from(10 - step), BigInt::from(10)));
        }
        step += 1;
    }
    out
}

fn mag_to_ball(m: Mag, prec: u32) -> Ball {
    let (man, e) = m.to_bigint_exp();
    Ball::from_dyadic(man, e, prec)
}

fn one_mag() -> Mag {
    Mag::from_u64(1)
}

/// `(n+1)/n` raised to `1 + k/2`, the growth ratio of `n^(1+k/2)`.
fn ratio_power(n: u64, k: u32, prec: u32) -> Ball {
    let r = Ball::from_rational(&BigRational::new(BigInt::from(n + 1), BigInt::from(n)), prec);
    r.mul(&r.sqrt().unwrap().pow(k as u64))
}

fn growth(n: u64, k: u32, prec: u32) -> Ball {
    let b = Ball::from_int(n as i64, prec);
    b.mul(&b.sqrt().unwrap().pow(k as u64))
}

/// Certified upper bound for `sum_{n > n0} d(n) n^(k/2) x^n`, using
/// `d(n) <= n` and a geometric comparison once consecutive terms shrink by
/// a fixed ratio below 1.
pub fn tail_bound(k: u32, x: &Ball, n0: u64) -> Result<Mag, NewformError> {
    let prec = 64;
    if !x.is_positive() || x.lt(&Ball::one(prec)) != Some(true) {
        return Err(NewformError::OutOfRange);
    }
    let xu = mag_to_ball(x.abs_up(), prec);
    let mut n = n0 + 1;
    let mut term = growth(n, k, prec).mul(&xu.pow(n));
    let mut acc = Mag::ZERO;
    loop {
        // every later ratio t_{m+1}/t_m with m >= n is at most r
        let r = ratio_power(n, k, prec).mul(&xu);
        if r.abs_up() < one_mag() {
            let denom = Ball::one(prec).sub(&mag_to_ball(r.abs_up(), prec));
            let geo = term.div(&denom).expect("denominator is positive");
            return Ok(acc.add_up(&geo.abs_up()));
        }
        acc = acc.add_up(&term.abs_up());
        term = term.mul(&r);
        n += 1;
    }
}

/// Smallest `n0` whose tail bound is below `2^-bits`, or `None` past `limit`.
fn terms_for_tail(k: u32, x: &Ball, bits: u32, limit: usize) -> Result<Option<usize>, NewformError> {
    let target = Mag::pow2(-(bits as i64));
    // geometric estimate from -log2(x), then walk up in small steps
    let lx = -x.to_f64().log2();
    let mut n = ((bits as f64 / lx) * 0.9).max(1.0) as usize;
    loop {
        if n > limit {
            return Ok(None);
        }
        if tail_bound(k, x, n as u64)? < target {
            return Ok(Some(n));
        }
        n += 1 + n / 32;
    }
}

/// Rough count of coefficients needed for `prec` bits at every scheduled `b`.
pub fn terms_needed(level: u64, weight: u32, prec: u32) -> usize {
    let sq = (level as f64).sqrt();
    let x = (-2.0 * std::f64::consts::PI * 0.7 / sq).exp();
    let lx = -x.log2();
    let bits = prec as f64 + 40.0 + (1.0 + weight as f64 / 2.0) * (prec as f64 / lx).max(2.0).log2();
    (bits / lx * 1.1) as usize + 20
}

/// `lambda_N(f)` from the two series at `tau = i b / sqrt(N)`:
/// `lambda = i^k b^-k sum a_n x1^n / sum conj(a_n) x2^n` with
/// `x1 = exp(-2 pi / (b sqrt N))` and `x2 = exp(-2 pi b / sqrt N)`.
pub fn pseudo_eigenvalue_at(ef: &EmbeddedNewform, b: &BigRational, prec: u32) -> Result<PseudoEigenvalue, NewformError> {
    let wp = prec + 32;
    let n = ef.level();
    let k = ef.weight();
    let label = ef.record.label.clone();
    let sqrt_n = Ball::from_int(n as i64, wp).sqrt().unwrap();
    let bb = Ball::from_rational(b, wp);
    let two_pi = pi(wp).mul_2exp(1);
    let x1 = two_pi.div(&bb.mul(&sqrt_n)).unwrap().neg().exp();
    let x2 = two_pi.mul(&bb).div(&sqrt_n).unwrap().neg().exp();
    let xmax = if x1.lt(&x2) == Some(true) { x2.clone() } else { x1.clone() };
    let available = ef.terms();
    let (terms, tail) = match terms_for_tail(k, &xmax, wp, available)? {
        Some(t) => (t, Mag::pow2(-(wp as i64))),
        None => {
            let tail = tail_bound(k, &xmax, available as u64)?;
            if tail.log2() > -(prec as f64) / 2.0 {
                let needed = terms_needed(n, k, prec).max(available + 1);
                return Err(NewformError::InsufficientCoefficients { needed, available });
            }
            (available, tail)
        }
    };
    let mut s1 = CBall::zero(wp);
    let mut s2 = CBall::zero(wp);
    let mut p1 = x1.clone();
    let mut p2 = x2.clone();
    for a in &ef.coeff_balls[1..=terms] {
        s1 = s1.add(&a.mul_real(&p1));
        s2 = s2.add(&a.conj().mul_real(&p2));
        p1 = p1.mul(&x1);
        p2 = p2.mul(&x2);
    }
    let s1 = s1.add_error(tail);
    let s2 = s2.add_error(tail);
    if s2.contains_zero() {
        return Err(NewformError::DenominatorVanishes { label });
    }
    let bk = bb.pow(k as u64);
    let num = s1.mul_i_pow(k as i64);
    let num = CBall::new(num.re.div(&bk).unwrap(), num.im.div(&bk).unwrap());
    let value = num.div(&s2).ok_or_else(|| NewformError::DenominatorVanishes { label: label.clone() })?;
    if !value.abs_sqr().contains_int(&BigInt::from(1)) {
        return Err(NewformError::NotUnimodular { label });
    }
    Ok(PseudoEigenvalue { value: value.with_prec(prec), b_used: b.clone(), terms_used: terms, precision: prec })
}

/// Tries each `b` of the schedule until the denominator series is
/// certified nonzero.
pub fn pseudo_eigenvalue(ef: &EmbeddedNewform, prec: u32) -> Result<PseudoEigenvalue, NewformError> {
    for b in b_schedule() {
        match pseudo_eigenvalue_at(ef, &b, prec) {
            Err(NewformError::DenominatorVanishes { .. }) => continue,
            other => return other,
        }
    }
    Err(NewformError::DenominatorVanishes { label: ef.record.label.clone() })
}
