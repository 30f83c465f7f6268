use std::cmp::Ordering;

use ball::{Ball, CBall, Mag};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};

use crate::NewformError;

fn horner_f64(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    // value and derivative
    let mut v = Complex64::zero();
    let mut d = Complex64::zero();
    for &a in c.iter().rev() {
        d = d * z + v;
        v = v * z + a;
    }
    (v, d)
}

/// Aberth-Ehrlich iteration in double precision.
fn approximate_roots(poly: &[BigInt]) -> Vec<Complex64> {
    let c: Vec<f64> = poly.iter().map(|x| x.to_f64().unwrap_or(f64::MAX)).collect();
    let n = c.len() - 1;
    let radius = 1.0 + c[..n].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius.powf(0.5), 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4))
        .collect();
    for _ in 0..2000 {
        let mut worst = 0.0f64;
        for i in 0..n {
            let (v, d) = horner_f64(&c, z[i]);
            if v == Complex64::zero() {
                continue;
            }
            let ratio = v / d;
            let s: Complex64 = (0..n).filter(|&j| j != i).map(|j| 1.0 / (z[i] - z[j])).sum();
            let w = ratio / (1.0 - ratio * s);
            z[i] -= w;
            worst = worst.max(w.norm() / z[i].norm().max(1.0));
        }
        if worst < 1e-15 {
            break;
        }
    }
    z
}

fn eval(poly: &[BigInt], z: &CBall, prec: u32) -> CBall {
    let mut v = CBall::zero(prec);
    for a in poly.iter().rev() {
        v = v.mul(z).add(&CBall::from_real(Ball::from_bigint(a.clone(), prec)));
    }
    v
}

/// Weierstrass corrections `p(z_i) / prod_{j != i} (z_i - z_j)` for a monic `p`.
fn corrections(poly: &[BigInt], z: &[CBall], prec: u32) -> Option<Vec<CBall>> {
    (0..z.len())
        .map(|i| {
            let mut den = CBall::one(prec);
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    den = den.mul(&z[i].sub(zj));
                }
            }
            eval(poly, &z[i], prec).div(&den)
        })
        .collect()
}

fn order(a: &CBall, b: &CBall) -> Ordering {
    let (ar, ai) = a.to_f64();
    let (br, bi) = b.to_f64();
    if (ar - br).abs() < 1e-9 {
        ai.partial_cmp(&bi).unwrap_or(Ordering::Equal)
    } else {
        ar.partial_cmp(&br).unwrap_or(Ordering::Equal)
    }
}

/// Certified boxes around the complex roots of a monic squarefree integer
/// polynomial (constant term first), each containing exactly one root and
/// of radius below `2^-prec`. Roots are ordered by real part, then
/// imaginary part.
///
/// Isolation uses the inclusion theorem for Weierstrass corrections: the
/// disks `|z - z_i| <= n |W_i|` contain all roots, and a disk disjoint from
/// the others contains exactly one.
pub fn isolate_roots(poly: &[BigInt], prec: u32) -> Result<Vec<CBall>, NewformError> {
    let n = poly.len() - 1;
    let fail = || NewformError::RootIsolation(format!("{poly:?}"));
    if n == 0 {
        return Ok(vec![]);
    }
    if n == 1 {
        return Ok(vec![CBall::from_real(Ball::from_bigint(-&poly[0], prec))]);
    }
    let wp = prec + 64;
    let mut z: Vec<CBall> = approximate_roots(poly)
        .iter()
        .map(|c| CBall::new(Ball::from_f64(c.re, wp), Ball::from_f64(c.im, wp)))
        .collect();
    let target = -(wp as f64) + 8.0;
    let mut converged = false;
    for _ in 0..200 {
        let w = corrections(poly, &z, wp).ok_or_else(fail)?;
        let worst = w.iter().map(|x| x.abs_up().log2()).fold(f64::NEG_INFINITY, f64::max);
        z = z.iter().zip(&w).map(|(a, b)| a.sub(b).mid_ball()).collect();
        if worst < target {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(fail());
    }
    let w = corrections(poly, &z, wp).ok_or_else(fail)?;
    let r: Vec<Mag> = w.iter().map(|x| x.abs_up().mul_up(&Mag::from_u64(n as u64))).collect();
    for i in 0..n {
        if r[i].log2() > -(prec as f64) - 1.0 {
            return Err(fail());
        }
        for j in i + 1..n {
            let gap = z[i].sub(&z[j]).abs_down();
            let need = r[i].add_up(&r[j]).mul_2exp(1);
            if gap <= need {
                return Err(fail());
            }
        }
    }
    let mut out: Vec<CBall> = z
        .into_iter()
        .zip(r)
        .map(|(c, r)| CBall::new(c.re.add_error(r), c.im.add_error(r)).with_prec(prec))
        .collect();
    out.sort_by(order);
    Ok(out)
}
