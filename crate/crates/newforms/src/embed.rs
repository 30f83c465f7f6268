use std::sync::Arc;

use ball::{Ball, CBall};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{isolate_roots, NewformError, NewformRecord};

/// All complex embeddings of a newform orbit at a fixed precision.
#[derive(Clone, Debug)]
pub struct EmbeddedOrbit {
    pub record: Arc<NewformRecord>,
    /// Certified boxes around the roots of the field polynomial; embedding
    /// `i` sends `a` to the root in `roots[i]`.
    pub roots: Vec<CBall>,
    /// `conj[i]` is the embedding `j` with `sigma_j = complex conjugation ∘ sigma_i`.
    pub conj: Vec<usize>,
    powers: Vec<Vec<CBall>>,
    pub prec: u32,
}

impl EmbeddedOrbit {
    pub fn new(record: Arc<NewformRecord>, prec: u32) -> Result<EmbeddedOrbit, NewformError> {
        let wp = prec + 64;
        let roots = isolate_roots(record.field.poly(), wp)?;
        let mut conj = Vec::with_capacity(roots.len());
        for (i, r) in roots.iter().enumerate() {
            let c = r.conj();
            let hits: Vec<usize> = roots.iter().enumerate().filter(|(_, s)| s.overlaps(&c)).map(|(j, _)| j).collect();
            match hits.as_slice() {
                [j] => conj.push(*j),
                _ => return Err(NewformError::ConjugateNotFound { label: record.label.clone(), index: i }),
            }
        }
        let deg = record.degree();
        let powers = roots
            .iter()
            .map(|r| {
                let mut p = vec![CBall::one(wp)];
                for _ in 1..deg {
                    let next = p.last().unwrap().mul(r);
                    p.push(next);
                }
                p
            })
            .collect();
        Ok(EmbeddedOrbit { record, roots, conj, powers, prec })
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    /// `sigma_i(x)` for `x` in the power basis of `L`.
    pub fn embed(&self, i: usize, x: &[BigRational]) -> CBall {
        let wp = self.prec + 64;
        let den = x.iter().fold(BigInt::one(), |d, c| d.lcm(c.denom()));
        let mut acc = CBall::zero(wp);
        for (c, p) in x.iter().zip(&self.powers[i]) {
            if !c.is_zero() {
                acc = acc.add(&p.mul_int(&(c.numer() * (&den / c.denom()))));
            }
        }
        if !den.is_one() {
            let d = Ball::from_bigint(den, wp);
            acc = CBall::new(acc.re.div(&d).unwrap(), acc.im.div(&d).unwrap());
        }
        acc
    }

    /// `sigma_i(f)` with its first `terms` coefficients embedded.
    pub fn embedding(&self, i: usize, terms: usize) -> EmbeddedNewform {
        let rec = &self.record;
        let terms = terms.min(rec.n_max);
        let mut coeff_balls = Vec::with_capacity(terms + 1);
        coeff_balls.push(CBall::zero(self.prec + 64));
        for n in 1..=terms {
            coeff_balls.push(self.embed(i, rec.a(n)));
        }
        EmbeddedNewform {
            record: rec.clone(),
            embedding_index: i,
            root: self.roots[i].clone(),
            coeff_balls,
            precision: self.prec,
        }
    }
}

/// A single complex embedding `sigma_i(f)` of a newform.
#[derive(Clone, Debug)]
pub struct EmbeddedNewform {
    pub record: Arc<NewformRecord>,
    pub embedding_index: usize,
    pub root: CBall,
    /// `coeff_balls[n]` contains `sigma_i(a_n)`; index 0 is the zero constant term.
    pub coeff_balls: Vec<CBall>,
    pub precision: u32,
}

impl EmbeddedNewform {
    pub fn level(&self) -> u64 {
        self.record.level
    }

    pub fn weight(&self) -> u32 {
        self.record.weight
    }

    /// Number of embedded coefficients `a_1..a_n`.
    pub fn terms(&self) -> usize {
        self.coeff_balls.len() - 1
    }
}
