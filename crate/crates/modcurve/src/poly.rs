use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

/// Exponent vectors of degree `d` in `g` variables, graded lexicographic with
/// `x_1 > x_2 > ... > x_g`.
pub fn monomials(g: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(g: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == g {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(g, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if g == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(g, d, &mut Vec::new(), &mut out);
    out
}

/// A homogeneous polynomial with integer coefficients, stored densely over
/// [`monomials`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    pub nvars: usize,
    pub degree: u32,
    pub coeffs: Vec<BigInt>,
}

impl Poly {
    pub fn zero(nvars: usize, degree: u32) -> Poly {
        Poly { nvars, degree, coeffs: vec![BigInt::zero(); monomials(nvars, degree).len()] }
    }

    pub fn from_terms(nvars: usize, degree: u32, terms: &[(Vec<u32>, i64)]) -> Poly {
        let mons = monomials(nvars, degree);
        let mut p = Poly::zero(nvars, degree);
        for (m, c) in terms {
            let i = mons.iter().position(|x| x == m).expect("monomial of the right degree");
            p.coeffs[i] += BigInt::from(*c);
        }
        p
    }

    /// Clears denominators and content; the first nonzero coefficient is positive.
    pub fn from_rationals(nvars: usize, degree: u32, c: &[BigRational]) -> Poly {
        let den = c.iter().fold(BigInt::one(), |d, x| d.lcm(x.denom()));
        let ints: Vec<BigInt> = c.iter().map(|x| x.numer() * (&den / x.denom())).collect();
        Poly { nvars, degree, coeffs: ints }.primitive()
    }

    pub fn primitive(mut self) -> Poly {
        let g = self.coeffs.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        if g.is_zero() {
            return self;
        }
        let lead_neg = self.coeffs.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
        let g = if lead_neg { -g } else { g };
        for x in &mut self.coeffs {
            *x = &*x / &g;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|x| x.is_zero())
    }

    pub fn terms(&self) -> Vec<(Vec<u32>, BigInt)> {
        monomials(self.nvars, self.degree).into_iter().zip(&self.coeffs).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m, c.clone())).collect()
    }

    /// `x_i * self`.
    pub fn mul_var(&self, i: usize) -> Poly {
        let mons = monomials(self.nvars, self.degree + 1);
        let mut out = Poly::zero(self.nvars, self.degree + 1);
        for (mut m, c) in self.terms() {
            m[i] += 1;
            let j = mons.iter().position(|x| *x == m).unwrap();
            out.coeffs[j] = c;
        }
        out
    }

    fn var_names(&self) -> Vec<String> {
        if self.nvars <= 3 {
            ["x", "y", "z"][..self.nvars].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=self.nvars).map(|i| format!("x{i}")).collect()
        }
    }
}

/// `x^3*z - x*y^3 + y*z^3`; variables are `x, y, z` for up to three and
/// `x1, x2, ...` beyond.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.var_names();
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in terms.iter().enumerate() {
            let mono: Vec<String> = m
                .iter()
                .zip(&names)
                .filter(|(e, _)| **e > 0)
                .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if k == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match (mag.is_one(), mono.is_empty()) {
                (true, false) => write!(f, "{}", mono.join("*"))?,
                (_, true) => write!(f, "{mag}")?,
                (false, false) => write!(f, "{mag}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct Wire {
    degree: u32,
    text: String,
    monomials: Vec<Vec<u32>>,
    coeffs: Vec<String>,
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (monomials, coeffs) = self.terms().into_iter().map(|(m, c)| (m, c.to_string())).unzip();
        Wire { degree: self.degree, text: self.to_string(), monomials, coeffs }.serialize(s)
    }
}
