use cyclo::{CycNum, GaloisChar};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};
use zlinalg::numth::lcm_u64;

use crate::{NumberField, QExpError};

/// Smallest coefficient ring containing every known coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum CoeffRing {
    Z,
    Q,
    ZZeta,
    QZeta,
}

/// `sum_{n < prec} a_n q_w^n` with `a_n` in `Q(zeta_c)`, `c` the conductor.
///
/// Only the first `prec` coefficients are known. Every operation returns
/// the longest prefix that is determined by its inputs.
#[derive(Clone, PartialEq, Eq)]
pub struct QExp {
    width: u64,
    level: u64,
    weight: u32,
    conductor: u64,
    coeffs: Vec<CycNum>,
}

impl QExp {
    pub fn new(width: u64, level: u64, weight: u32, coeffs: Vec<CycNum>) -> QExp {
        assert!(width > 0, "width must be positive");
        let conductor = coeffs.iter().fold(1, |m, c| lcm_u64(m, c.conductor()));
        let coeffs = coeffs.into_iter().map(|c| c.lift(conductor)).collect();
        QExp { width, level, weight, conductor, coeffs }
    }

    pub fn from_ints(width: u64, level: u64, weight: u32, a: &[i64]) -> QExp {
        QExp::new(width, level, weight, a.iter().map(|&x| CycNum::from_int(x)).collect())
    }

    pub fn from_bigints(width: u64, level: u64, weight: u32, a: &[BigInt]) -> QExp {
        QExp::new(width, level, weight, a.iter().map(|x| CycNum::from_int(x.clone())).collect())
    }

    pub fn from_rationals(width: u64, level: u64, weight: u32, a: &[BigRational]) -> QExp {
        QExp::new(width, level, weight, a.iter().map(CycNum::from_rational).collect())
    }

    /// The constant series `1` (weight 0) known to `prec` terms.
    pub fn one(width: u64, prec: usize) -> QExp {
        let mut c = vec![CycNum::zero(); prec];
        if prec > 0 {
            c[0] = CycNum::one();
        }
        QExp::new(width, 1, 0, c)
    }

    pub fn width(&self) -> u64 {
        self.width
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn prec(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[CycNum] {
        &self.coeffs
    }

    /// `a_n`, or `None` beyond the known precision.
    pub fn coeff(&self, n: usize) -> Option<&CycNum> {
        self.coeffs.get(n)
    }

    pub fn with_level(mut self, level: u64) -> QExp {
        self.level = level;
        self
    }

    pub fn with_weight(mut self, weight: u32) -> QExp {
        self.weight = weight;
        self
    }

    /// Index of the first nonzero known coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Lower bound for the true valuation: `prec` when nothing nonzero is known.
    fn valuation_bound(&self) -> usize {
        self.valuation().unwrap_or(self.prec())
    }

    pub fn is_cusp(&self) -> bool {
        self.coeffs.first().map_or(true, |c| c.is_zero())
    }

    pub fn ring(&self) -> CoeffRing {
        let rational = self.coeffs.iter().all(|c| c.to_rational().is_some());
        let integral = self.coeffs.iter().all(|c| c.is_integral());
        match (rational, integral) {
            (true, true) => CoeffRing::Z,
            (true, false) => CoeffRing::Q,
            (false, true) => CoeffRing::ZZeta,
            (false, false) => CoeffRing::QZeta,
        }
    }

    /// The coefficients as integers, if they all are.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.to_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())).collect()
    }

    pub fn truncate(&self, prec: usize) -> QExp {
        let mut out = self.clone();
        out.coeffs.truncate(prec);
        out
    }

    fn check_width(&self, o: &QExp) -> Result<(), QExpError> {
        if self.width != o.width {
            return Err(QExpError::WidthMismatch(self.width, o.width));
        }
        Ok(())
    }

    pub fn add(&self, o: &QExp) -> Result<QExp, QExpError> {
        self.check_width(o)?;
        let p = self.prec().min(o.prec());
        let c = (0..p).map(|n| self.coeffs[n].add(&o.coeffs[n])).collect();
        Ok(QExp::new(self.width, self.level.max(o.level), self.weight, c))
    }

    pub fn sub(&self, o: &QExp) -> Result<QExp, QExpError> {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> QExp {
        QExp { coeffs: self.coeffs.iter().map(|c| c.neg()).collect(), ..self.clone() }
    }

    pub fn scale(&self, c: &CycNum) -> QExp {
        QExp::new(self.width, self.level, self.weight, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    /// Cauchy product. Coefficient `n` is known when every term `a_i b_{n-i}`
    /// with possibly nonzero factors is known.
    pub fn mul(&self, o: &QExp) -> Result<QExp, QExpError> {
        self.check_width(o)?;
        let (vf, vg) = (self.valuation_bound(), o.valuation_bound());
        let prec = (self.prec() + vg).min(o.prec() + vf);
        let mut c = vec![CycNum::zero(); prec];
        for i in vf..self.prec().min(prec) {
            let a = &self.coeffs[i];
            if a.is_zero() {
                continue;
            }
            for j in vg..o.prec().min(prec - i) {
                let b = &o.coeffs[j];
                if !b.is_zero() {
                    c[i + j] = c[i + j].add(&a.mul(b));
                }
            }
        }
        Ok(QExp::new(self.width, lcm_u64(self.level, o.level), self.weight + o.weight, c))
    }

    /// `alpha_d : sum a_n q^n -> sum a_n q^{dn}`.
    pub fn degeneracy(&self, d: u64) -> QExp {
        assert!(d >= 1, "degeneracy index must be positive");
        let d = d as usize;
        let mut c = vec![CycNum::zero(); d * self.prec()];
        for (n, a) in self.coeffs.iter().enumerate() {
            c[d * n] = a.clone();
        }
        QExp::new(self.width, self.level * d as u64, self.weight, c)
    }

    /// Applies `sigma_d` to every coefficient.
    pub fn galois_twist(&self, s: &GaloisChar) -> Result<QExp, QExpError> {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, a)| s.apply(a).map_err(|e| QExpError::NotInField { index: n, reason: e.to_string() }))
            .collect::<Result<_, _>>()?;
        Ok(QExp::new(self.width, self.level, self.weight, c))
    }

    /// `a_n -> zeta_N^{jn} a_n` for a series in `q_N`.
    pub fn t_twist(&self, j: i64) -> Result<QExp, QExpError> {
        if self.width != self.level {
            return Err(QExpError::TwistWidth { width: self.width, level: self.level });
        }
        let w = self.width as i64;
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(n, a)| if a.is_zero() { a.clone() } else { a.mul(&CycNum::zeta_pow(self.width, (j * n as i64).rem_euclid(w))) })
            .collect();
        Ok(QExp::new(self.width, self.level, self.weight, c))
    }
}

/// Coefficientwise `Tr_{L/Q}` of a series whose coefficients are given in
/// the power basis of `L`.
pub fn trace_down(field: &NumberField, coeffs: &[Vec<BigRational>], width: u64, level: u64, weight: u32) -> Result<QExp, QExpError> {
    let deg = field.degree();
    let mut out = Vec::with_capacity(coeffs.len());
    for (n, c) in coeffs.iter().enumerate() {
        if c.len() != deg {
            return Err(QExpError::NotInField { index: n, reason: format!("{} coordinates for a degree {deg} field", c.len()) });
        }
        out.push(field.trace(c));
    }
    Ok(QExp::from_rationals(width, level, weight, &out))
}

/// `m(f_1, ..., f_g) = prod f_i^{m_i}`, known to at least `len` terms.
pub fn eval_monomial(m: &[u32], forms: &[QExp], len: usize) -> Result<QExp, QExpError> {
    if m.len() != forms.len() {
        return Err(QExpError::Arity { expected: forms.len(), got: m.len() });
    }
    let width = forms.first().map_or(1, |f| f.width);
    let mut acc = QExp::one(width, len);
    for (f, &e) in forms.iter().zip(m) {
        for _ in 0..e {
            acc = acc.mul(f)?;
        }
    }
    if acc.prec() < len {
        return Err(QExpError::Precision { needed: len, available: acc.prec() });
    }
    Ok(acc.truncate(len))
}

impl std::fmt::Debug for QExp {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(n, c)| format!("({c})q^{n}"))
            .collect();
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        write!(f, "{body} + O(q_{}^{})", self.width, self.prec())
    }
}

impl Serialize for QExp {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let coeffs: Vec<Vec<String>> = self.coeffs.iter().map(|c| c.coeffs().iter().map(|x| x.to_string()).collect()).collect();
        let mut st = s.serialize_struct("QExp", 5)?;
        st.serialize_field("width", &self.width)?;
        st.serialize_field("weight", &self.weight)?;
        st.serialize_field("level", &self.level)?;
        st.serialize_field("conductor", &self.conductor)?;
        st.serialize_field("coeffs", &coeffs)?;
        st.end()
    }
}
