use std::sync::Arc;

use ball::{CBall, Mag};
use cyclo::{CycMatrix, CycNum};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};
use zlinalg::numth::inv_mod_u64;
use zlinalg::{IntMatrix, QMatrix};

use crate::matrix::ball_mul;
use crate::{denominator_bounds, AlError, DiamondRep, ZBasis};

/// The exact Atkin-Lehner matrix together with the data it was recovered from.
#[derive(Clone, Debug)]
pub struct ALMatrix {
    pub basis: Arc<ZBasis>,
    pub diamonds: DiamondRep,
    /// `W` over `Q(zeta_Q)`.
    pub w: CycMatrix,
    /// `beta_b = Tr(zeta_Q^b W)`, `0 <= b < phi(Q)`.
    pub betas: Vec<QMatrix>,
    pub b: BigInt,
    /// `B_{k,N} alpha`.
    pub denom_bound: BigInt,
    pub precision: u32,
}

impl ALMatrix {
    pub fn level(&self) -> u64 {
        self.basis.space.level
    }

    pub fn weight(&self) -> u32 {
        self.basis.space.weight
    }

    pub fn conductor(&self) -> u64 {
        self.diamonds.q
    }

    pub fn to_json(&self, report: &VerifyReport) -> Value {
        let ints = |m: &IntMatrix| -> Vec<Vec<String>> {
            (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect()).collect()
        };
        let diamonds: serde_json::Map<String, Value> =
            self.diamonds.mats.iter().map(|(d, m)| (d.to_string(), json!(ints(m)))).collect();
        json!({
            "level": self.level(),
            "weight": self.weight(),
            "h": self.basis.space.h.elements().collect::<Vec<_>>(),
            "genus": self.basis.dim(),
            "sturm": self.basis.sturm.s,
            "conductor": self.conductor(),
            "alpha": self.basis.alpha.to_string(),
            "b_kn": self.b.to_string(),
            "pivots": self.basis.pivots,
            "basis": ints(&self.basis.a),
            "diamonds": diamonds,
            "w": self.w,
            "precision_bits": self.precision,
            "verification": report,
        })
    }
}

fn scalar_matrix(g: usize, x: CycNum, n: u64) -> CycMatrix {
    CycMatrix::from_fn(g, g, n, |i, j| if i == j { x.clone() } else { CycNum::zero() })
}

/// Recovers `W` from a ball approximation: the matrices
/// `beta_b = W sum_d zeta_Q^(db) D_d` are rational with denominators dividing
/// `B_{k,N} alpha`, so they are rounded and `W` is rebuilt entrywise from its traces.
pub fn reconstruct_w(numw: &[Vec<CBall>], rep: &DiamondRep, basis: &Arc<ZBasis>, prec: u32) -> Result<ALMatrix, AlError> {
    let g = basis.dim();
    let q = rep.q;
    let (b, _) = denominator_bounds(basis.space.weight, basis.space.level);
    let scale = &b * &basis.alpha;
    let wp = prec + 64;
    let phi = rep.residues().count();
    let quarter = Mag::pow2(-2);
    let mut betas = Vec::with_capacity(phi);
    for bb in 0..phi as i64 {
        let mut s = vec![vec![CBall::zero(wp); g]; g];
        for d in rep.residues() {
            let z = CBall::root_of_unity(bb * d as i64, q, wp);
            let dm = rep.get(d as i64);
            for (i, row) in s.iter_mut().enumerate() {
                for (j, x) in row.iter_mut().enumerate() {
                    if !dm[(i, j)].is_zero() {
                        *x = x.add(&z.mul_int(&dm[(i, j)]));
                    }
                }
            }
        }
        let beta = ball_mul(numw, &s, wp);
        let mut exact = QMatrix::from_fn(g, g, |_, _| BigRational::zero());
        for i in 0..g {
            for j in 0..g {
                let x = beta[i][j].mul_int(&scale);
                let fail = |what: &str| AlError::Precision {
                    bits: prec,
                    reason: format!("entry ({i}, {j}) of B alpha beta_{bb} {what} (radius 2^{:.1})", x.rad().log2()),
                };
                if !(x.re.rad() < quarter) || !(x.im.rad() < quarter) {
                    return Err(fail("is not below radius 1/4"));
                }
                if !x.im.contains_zero() {
                    return Err(fail("is not real"));
                }
                let v = x.re.unique_integer().ok_or_else(|| fail("contains no unique integer"))?;
                exact[(i, j)] = BigRational::new(v, scale.clone());
            }
        }
        betas.push(exact);
    }
    let mut rows = Vec::with_capacity(g);
    for i in 0..g {
        let mut row = Vec::with_capacity(g);
        for j in 0..g {
            let traces: Vec<BigRational> = betas.iter().map(|m| m[(i, j)].clone()).collect();
            row.push(cyclo::trace_reconstruct(&traces, q)?);
        }
        rows.push(row);
    }
    let w = if g == 0 { CycMatrix::zeros(0, 0, q) } else { CycMatrix::from_rows(rows) };
    Ok(ALMatrix { basis: basis.clone(), diamonds: rep.clone(), w, betas, b, denom_bound: scale, precision: prec })
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }

    fn push(&mut self, name: &str, passed: bool, detail: String) {
        self.checks.push(Check { name: name.into(), passed, detail });
    }
}

/// Exact checks of `W` against the structure it must have.
pub fn verify_w(al: &ALMatrix) -> VerifyReport {
    let mut rep = VerifyReport::default();
    let g = al.basis.dim();
    let q = al.conductor();
    let k = al.weight();
    let n = al.level();
    let w = &al.w;

    let sign = if k % 2 == 0 { 1 } else { -1 };
    let target = scalar_matrix(g, CycNum::from_int(BigInt::from(n).pow(k) * sign), q);
    rep.push("w_squared", w.mul(w) == target, format!("W^2 = (-1)^{k} {n}^{k} I"));

    let den = w.denominator();
    rep.push(
        "integrality",
        al.denom_bound.is_multiple_of(&den),
        format!("denominator {den} divides B alpha = {}", al.denom_bound),
    );

    let gens = al.diamonds.generators();
    let mut galois_ok = true;
    let mut commute_ok = true;
    for &d in &gens {
        let dd = CycMatrix::from_int(al.diamonds.get(d as i64), q);
        if w.galois(d as i64) != w.mul(&dd) {
            galois_ok = false;
        }
        let dinv = inv_mod_u64(d, q).unwrap_or(0);
        let ddi = CycMatrix::from_int(al.diamonds.get(dinv as i64), q);
        if dd.mul(w) != w.mul(&ddi) {
            commute_ok = false;
        }
    }
    rep.push("galois_twist", galois_ok, format!("sigma_d(W) = W D_d for d in {gens:?}"));
    rep.push("diamond_commutation", commute_ok, format!("D_d W = W D_(1/d) for d in {gens:?}"));

    let mut traces_ok = true;
    for (bb, beta) in al.betas.iter().enumerate() {
        let z = CycNum::zeta_pow(q, bb as i64);
        let t = w.map(|x| CycNum::from_rational(&x.mul(&z).trace()));
        if t.to_rational().as_ref() != Some(beta) {
            traces_ok = false;
        }
    }
    rep.push("beta_traces", traces_ok, "Tr(zeta_Q^b W) reproduces every rounded beta_b".into());

    let one_ok = al.diamonds.get(1).is_identity() && al.diamonds.mats.values().all(|m| zlinalg::hnf::is_unimodular(m));
    rep.push("diamond_group", one_ok, format!("D_1 = I and every D_d unimodular, Q = {q}"));
    rep
}
