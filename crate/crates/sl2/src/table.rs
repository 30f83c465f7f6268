use std::sync::Arc;

use alcore::{compute_al_matrix, ALMatrix, Check, PrecisionPolicy, Space, VerifyReport};
use cyclo::{CycMatrix, CycNum};
use newforms::FixtureStore;
use num_bigint::BigInt;
use qexp::QExp;
use serde_json::{json, Value};
use zlinalg::rational::inverse;
use zlinalg::QMatrix;

use crate::{lift_sl2, word_decompose, GL2Element, Letter, Sl2Error, Word};

/// Coefficient columns checked for stability under `T` when the full
/// product would be larger than this many entries.
const T_CHECK_ENTRIES: usize = 200_000;

/// The action of `S` and `T` on the basis `h_j = f_j(q -> q_N)` of
/// `S_k(Gamma(N))`, where `f_j` is the distinguished basis of
/// `S_k(Gamma0(N^2) ∩ Gamma1(N))`.
#[derive(Clone, Debug)]
pub struct ActionTable {
    pub n: u64,
    pub k: u32,
    pub al: Arc<ALMatrix>,
    /// `N^-k W` over `Q(zeta_N)`.
    pub s_matrix: CycMatrix,
    /// `A` at its pivot columns, and its inverse.
    ap: QMatrix,
    ap_inv: QMatrix,
    pub report: VerifyReport,
}

pub fn vec_mul(v: &[CycNum], m: &CycMatrix) -> Vec<CycNum> {
    assert_eq!(v.len(), m.rows(), "shape mismatch");
    let n = m.conductor();
    (0..m.cols())
        .map(|j| {
            let mut acc = CycNum::zero();
            for (i, x) in v.iter().enumerate() {
                let y = m.get(i, j);
                if !x.is_zero() && !y.is_zero() {
                    acc = acc.add(&x.mul(y));
                }
            }
            acc.lift(n)
        })
        .collect()
}

fn check(name: &str, passed: bool, detail: String) -> Check {
    Check { name: name.into(), passed, detail }
}

fn scalar(g: usize, sign: i64, n: u64) -> CycMatrix {
    CycMatrix::identity(g, n).scale(&CycNum::from_int(sign))
}

/// Computes `W` at level `N^2` and checks the relations of `S` and `T`.
pub fn build_action_table(n: u64, k: u32, store: &FixtureStore, policy: PrecisionPolicy) -> Result<ActionTable, Sl2Error> {
    if n < 2 {
        return Err(Sl2Error::LevelTooSmall(n));
    }
    let space = Space::gamma0_gamma1(n * n, k, n);
    let (al, report) = compute_al_matrix(&space, store, policy)?;
    ActionTable::from_al_matrix(n, Arc::new(al), report)
}

impl ActionTable {
    /// Wraps a verified level `N^2` matrix and checks the relations.
    pub fn from_al_matrix(n: u64, al: Arc<ALMatrix>, mut report: VerifyReport) -> Result<ActionTable, Sl2Error> {
        let k = al.weight();
        if al.level() != n * n {
            return Err(Sl2Error::ModulusMismatch(al.level(), n * n));
        }
        if n % al.conductor() != 0 {
            return Err(Sl2Error::Relation(format!("W has conductor {} not dividing {n}", al.conductor())));
        }
        let scale = CycNum::from_rational(&num_rational::BigRational::new(1.into(), BigInt::from(n).pow(k)));
        let s_matrix = al.w.lift(n).scale(&scale);
        let ap = al.basis.pivot_matrix().to_rational();
        let ap_inv = if ap.rows() == 0 { QMatrix::zeros(0, 0) } else { inverse(&ap).map_err(alcore::AlError::from)? };
        let mut t = ActionTable { n, k, al, s_matrix, ap, ap_inv, report: VerifyReport::default() };
        report.checks.extend(t.relations());
        if let Some(c) = report.checks.iter().find(|c| !c.passed) {
            return Err(Sl2Error::Relation(format!("{}: {}", c.name, c.detail)));
        }
        t.report = report;
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.al.basis.dim()
    }

    pub fn sign(&self) -> i64 {
        if self.k % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// `h_1..h_g` as series in `q_N`.
    pub fn basis(&self) -> Vec<QExp> {
        let a = &self.al.basis.a;
        (0..self.dim()).map(|i| QExp::from_bigints(self.n, self.n, self.k, a.row(i))).collect()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.al.basis.pivots
    }

    fn zero_vec(&self) -> Vec<CycNum> {
        vec![CycNum::zero().lift(self.n); self.dim()]
    }

    /// `v` as coefficients at the pivot columns, `v A_P`.
    fn to_pivots(&self, v: &[CycNum]) -> Vec<CycNum> {
        qmul(v, &self.ap, self.n)
    }

    /// Coordinates of a form in the span from its coefficients at the pivot columns.
    pub fn from_pivots(&self, x: &[CycNum]) -> Vec<CycNum> {
        qmul(x, &self.ap_inv, self.n)
    }

    /// `(sum v_j h_j) | T^e`: the coefficient of `q_N^m` picks up `zeta_N^(e m)`.
    pub fn apply_t(&self, v: &[CycNum], e: i64) -> Vec<CycNum> {
        let mut x = self.to_pivots(v);
        for (xc, &p) in x.iter_mut().zip(self.pivots()) {
            *xc = xc.mul(&CycNum::zeta_pow(self.n, e * p as i64)).lift(self.n);
        }
        self.from_pivots(&x)
    }

    pub fn apply_s(&self, v: &[CycNum]) -> Vec<CycNum> {
        vec_mul(v, &self.s_matrix)
    }

    pub fn apply_word(&self, v: &[CycNum], w: &Word) -> Vec<CycNum> {
        w.letters().iter().fold(v.to_vec(), |acc, l| match *l {
            Letter::S => self.apply_s(&acc),
            Letter::T(e) => self.apply_t(&acc, e),
        })
    }

    /// Dense matrix of `T^e` on the `h`-basis.
    pub fn t_matrix(&self, e: i64) -> CycMatrix {
        let rows = (0..self.dim()).map(|i| self.apply_t(&self.unit(i), e)).collect();
        CycMatrix::from_rows(rows).lift(self.n)
    }

    fn unit(&self, i: usize) -> Vec<CycNum> {
        let mut v = self.zero_vec();
        v[i] = CycNum::one().lift(self.n);
        v
    }

    pub fn word_matrix(&self, w: &Word) -> CycMatrix {
        let mut m = CycMatrix::identity(self.dim(), self.n);
        for l in w.letters() {
            m = match *l {
                Letter::S => m.mul(&self.s_matrix),
                Letter::T(e) => m.mul(&self.t_matrix(e)),
            };
        }
        m
    }

    /// `(M, d)` with `v * A = sigma_d(v M)`.
    pub fn action_matrix(&self, a: &GL2Element) -> Result<(CycMatrix, u64), Sl2Error> {
        self.check_modulus(a)?;
        let (gamma, d) = a.factor();
        let w = word_decompose(&lift_sl2(&gamma)?)?.reduce_mod(self.n);
        Ok((self.word_matrix(&w), d))
    }

    /// The right action `v * A` on coordinate vectors over `Q(zeta_N)`.
    pub fn act(&self, v: &[CycNum], a: &GL2Element) -> Result<Vec<CycNum>, Sl2Error> {
        self.check_modulus(a)?;
        if v.len() != self.dim() {
            return Err(Sl2Error::Dimension { got: v.len(), expected: self.dim() });
        }
        let (gamma, d) = a.factor();
        let w = word_decompose(&lift_sl2(&gamma)?)?.reduce_mod(self.n);
        let v: Vec<CycNum> = v.iter().map(|x| x.lift(self.n)).collect();
        Ok(self.apply_word(&v, &w).iter().map(|x| x.galois(d as i64)).collect())
    }

    fn check_modulus(&self, a: &GL2Element) -> Result<(), Sl2Error> {
        if a.n != self.n {
            return Err(Sl2Error::ModulusMismatch(a.n, self.n));
        }
        Ok(())
    }

    /// The series `sum_j v_j h_j` through `q_N^(len-1)`.
    pub fn expansion(&self, v: &[CycNum], len: usize) -> QExp {
        let a = &self.al.basis.a;
        let len = len.min(a.cols());
        let coeffs = (0..len)
            .map(|m| {
                let mut acc = CycNum::zero();
                for (i, x) in v.iter().enumerate() {
                    let c = &a[(i, m)];
                    if !x.is_zero() && c.sign() != num_bigint::Sign::NoSign {
                        acc = acc.add(&x.scale_int(c));
                    }
                }
                acc.lift(self.n)
            })
            .collect();
        QExp::new(self.n, self.n, self.k, coeffs)
    }

    fn relations(&self) -> Vec<Check> {
        let g = self.dim();
        let n = self.n;
        let sign = self.sign();
        let minus = scalar(g, sign, n);
        let s = &self.s_matrix;
        let t = self.t_matrix(1);
        let st = s.mul(&t);
        let mut out = vec![
            check("s_squared", s.mul(s) == minus, format!("S^2 = {sign} I")),
            check("st_cubed", st.mul(&st).mul(&st) == minus, format!("(ST)^3 = {sign} I")),
            check("t_period", self.t_matrix(n as i64).is_identity(), format!("T^{n} = I")),
        ];
        // T maps the span of the h_j to itself
        let a = &self.al.basis.a;
        let cols = if g * a.cols() <= T_CHECK_ENTRIES { a.cols() } else { (T_CHECK_ENTRIES / g.max(1)).min(a.cols()) };
        let mut stable = true;
        'rows: for i in 0..g {
            let tw = self.expansion(t.row(i), cols);
            for m in 0..cols {
                let want = CycNum::zeta_pow(n, m as i64).scale_int(&a[(i, m)]).lift(n);
                if tw.coeff(m).unwrap() != &want {
                    stable = false;
                    break 'rows;
                }
            }
        }
        out.push(check("t_stable", stable, format!("h_j | T in the span, checked through q_N^{}", cols.saturating_sub(1))));
        out
    }

    pub fn to_json(&self) -> Value {
        let basis: Vec<Vec<String>> =
            (0..self.dim()).map(|i| self.al.basis.a.row(i).iter().map(|x| x.to_string()).collect()).collect();
        json!({
            "n": self.n,
            "weight": self.k,
            "level": self.al.level(),
            "genus": self.dim(),
            "conductor": self.al.conductor(),
            "pivots": self.pivots(),
            "basis_q_n": basis,
            "s_matrix": self.s_matrix,
            "w": self.al.w,
            "precision_bits": self.al.precision,
            "verification": self.report,
        })
    }
}

/// `x M` for a rational matrix `M`.
fn qmul(x: &[CycNum], m: &QMatrix, n: u64) -> Vec<CycNum> {
    (0..m.cols())
        .map(|j| {
            let mut acc = CycNum::zero();
            for (i, xi) in x.iter().enumerate() {
                let c = &m[(i, j)];
                if !xi.is_zero() && !num_traits::Zero::is_zero(c) {
                    acc = acc.add(&xi.scale(c));
                }
            }
            acc.lift(n)
        })
        .collect()
}
