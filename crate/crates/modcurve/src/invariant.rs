use cyclo::CycNum;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use qexp::QExp;
use sl2::{ActionTable, GL2Element};
use zlinalg::rational::{integral_rows, kernel_int};
use zlinalg::{saturate_rows, IntMatrix, QMatrix};

use crate::{lll_reduce, CurveError, Group};

/// A basis of `S_k(Gamma(N), Q(zeta_N))^G`: the saturated `Z[zeta_N]`-integral
/// forms in Hermite normal form on their split coefficients.
#[derive(Clone, Debug)]
pub struct InvariantBasis {
    pub n: u64,
    pub weight: u32,
    pub width: u64,
    /// `dim S_k(Gamma(N))`.
    pub ambient_dim: usize,
    /// `f_i` in `q_w`.
    pub forms: Vec<QExp>,
    /// Coordinates of each `f_i` in the basis `h_1..h_g` of the table.
    pub coords: Vec<Vec<CycNum>>,
}

impl InvariantBasis {
    pub fn genus(&self) -> usize {
        self.forms.len()
    }

    /// Number of stored coefficients of each `f_i`.
    pub fn prec(&self) -> usize {
        self.forms.first().map_or(0, |f| f.prec())
    }
}

fn phi_of(n: u64) -> usize {
    CycNum::zero().lift(n).phi()
}

/// The Q-linear map `v -> v * A` on `Q^(g phi(N))`, coordinates of `zeta^r h_i`
/// at index `i phi + r`, as a matrix acting on row vectors.
pub fn generator_action(table: &ActionTable, a: &GL2Element) -> Result<QMatrix, CurveError> {
    let n = table.n;
    let g = table.dim();
    let phi = phi_of(n);
    let (m, d) = table.action_matrix(a)?;
    let mut out = QMatrix::zeros(g * phi, g * phi);
    for i in 0..g {
        for r in 0..phi {
            let z = CycNum::zeta_pow(n, r as i64);
            for j in 0..g {
                let x = m.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let y = z.mul(x).galois(d as i64).lift(n).coeffs();
                for (t, c) in y.into_iter().enumerate() {
                    out[(i * phi + r, j * phi + t)] = c;
                }
            }
        }
    }
    Ok(out)
}

/// Rational basis of the vectors fixed by every generator.
fn fixed_space(table: &ActionTable, group: &Group) -> Result<QMatrix, CurveError> {
    let dim = table.dim() * phi_of(table.n);
    if group.gens.is_empty() {
        return Ok(QMatrix::identity(dim));
    }
    // x (A - I) = 0 for all A  <=>  (A - I)^T x^T = 0, stacked
    let mut stacked = IntMatrix::zeros(0, dim);
    for a in &group.gens {
        let m = generator_action(table, a)?.sub(&QMatrix::identity(dim));
        stacked = stacked.vstack(&integral_rows(&m.transpose()));
    }
    Ok(kernel_int(&stacked))
}

/// `sum_i v_i h_i` through `q_N^(len-1)`, split into rational coordinates.
fn split_expansion(table: &ActionTable, x: &[BigRational], len: usize) -> Vec<BigRational> {
    let n = table.n;
    let phi = phi_of(n);
    let a = &table.al.basis.a;
    let v: Vec<CycNum> = x.chunks(phi).map(|c| CycNum::from_poly(n, c)).collect();
    let mut out = Vec::with_capacity(len * phi);
    for m in 0..len {
        let mut acc = CycNum::zero();
        for (i, vi) in v.iter().enumerate() {
            let c = &a[(i, m)];
            if !vi.is_zero() && !c.is_zero() {
                acc = acc.add(&vi.scale_int(c));
            }
        }
        out.extend(acc.lift(n).coeffs());
    }
    out
}

pub fn invariant_subspace(table: &ActionTable, group: &Group, lll: bool) -> Result<InvariantBasis, CurveError> {
    let n = table.n;
    if group.modulus() != n {
        return Err(CurveError::TableMismatch { table: n, weight: table.k, group: group.modulus() });
    }
    let phi = phi_of(n);
    let len = table.al.basis.len();
    let fixed = fixed_space(table, group)?;
    let r = fixed.rows();
    let empty = InvariantBasis { n, weight: table.k, width: group.width, ambient_dim: table.dim(), forms: Vec::new(), coords: Vec::new() };
    if r == 0 {
        return Ok(empty);
    }
    let split: Vec<Vec<BigRational>> = (0..r).map(|i| split_expansion(table, fixed.row(i), len)).collect();
    let ints = integral_rows(&QMatrix::from_rows(split));
    // zero columns change neither the saturation nor its HNF
    let live: Vec<usize> = (0..ints.cols()).filter(|&c| (0..r).any(|i| !ints[(i, c)].is_zero())).collect();
    let mut h = saturate_rows(&ints.select_cols(&live));
    if h.rows() != r {
        return Err(CurveError::Inconsistent(format!("coefficient lattice has rank {} for a fixed space of dimension {r}", h.rows())));
    }
    if lll {
        h = lll_reduce(&h);
    }
    let step = n / group.width;
    let mut forms = Vec::with_capacity(r);
    let mut coords = Vec::with_capacity(r);
    for i in 0..r {
        let mut full = vec![BigInt::zero(); len * phi];
        for (k, &c) in live.iter().enumerate() {
            full[c] = h[(i, k)].clone();
        }
        let coeff = |m: usize| CycNum::from_int_coeffs(n, &full[m * phi..(m + 1) * phi]);
        let at_pivots: Vec<CycNum> = table.pivots().iter().map(|&p| coeff(p)).collect();
        coords.push(table.from_pivots(&at_pivots));
        let wcoeffs = (0..len).step_by(step as usize).map(coeff).collect();
        forms.push(QExp::new(group.width, n, table.k, wcoeffs));
        debug_assert!((0..len).filter(|m| m % step as usize != 0).all(|m| coeff(m).is_zero()));
    }
    Ok(InvariantBasis { forms, coords, ..empty })
}
