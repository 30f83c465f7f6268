use serde::{Deserialize, Serialize};
use zlinalg::numth::{gcd_u64, inv_mod_u64};

use crate::{CycNum, CycloError};

/// The automorphism `sigma_d : zeta_n -> zeta_n^d` of `Q(zeta_n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GaloisChar {
    pub n: u64,
    pub d: u64,
}

impl GaloisChar {
    pub fn new(n: u64, d: i64) -> Result<GaloisChar, CycloError> {
        let r = d.rem_euclid(n as i64) as u64;
        if n == 0 || gcd_u64(r, n) != 1 {
            return Err(CycloError::NotUnit(d, n));
        }
        Ok(GaloisChar { n, d: r })
    }

    pub fn identity(n: u64) -> GaloisChar {
        GaloisChar { n, d: 1 % n }
    }

    /// `self ∘ other`, i.e. `sigma_{d d'}`.
    pub fn compose(&self, other: &GaloisChar) -> GaloisChar {
        assert_eq!(self.n, other.n, "composing automorphisms of different fields");
        GaloisChar { n: self.n, d: self.d * other.d % self.n }
    }

    pub fn inverse(&self) -> GaloisChar {
        GaloisChar { n: self.n, d: inv_mod_u64(self.d, self.n).unwrap() }
    }

    /// Every element of `Gal(Q(zeta_n)/Q)` in increasing order of `d`.
    pub fn all(n: u64) -> Vec<GaloisChar> {
        (0..n.max(1)).filter(|&d| gcd_u64(d, n) == 1).map(|d| GaloisChar { n, d: d % n.max(1) }).collect()
    }

    /// Applies `sigma_d` after lifting `a` to conductor `n` when needed.
    pub fn apply(&self, a: &CycNum) -> Result<CycNum, CycloError> {
        if self.n % a.conductor() != 0 {
            return Err(CycloError::ConductorMismatch(self.n, a.conductor()));
        }
        Ok(a.lift(self.n).galois(self.d as i64))
    }
}
