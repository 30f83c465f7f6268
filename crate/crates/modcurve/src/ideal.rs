use std::collections::BTreeMap;

use cyclo::CycNum;
use num_rational::BigRational;
use qexp::{eval_monomial, QExp};
use serde::Serialize;
use zlinalg::rational::{integral_rows, kernel_int, rank};
use zlinalg::QMatrix;

use crate::{monomials, CurveError, InvariantBasis, Poly};

/// The canonical model of `X_G`.
#[derive(Clone, Debug, Serialize)]
pub struct CurveModel {
    pub genus: usize,
    pub hyperelliptic: bool,
    pub ideal_generators: Vec<Poly>,
    /// `dim I_d(C)` for every degree computed.
    pub ideal_dims: BTreeMap<u32, usize>,
    /// Cubics added to the quadrics, when the quadrics do not generate.
    pub complement_cubics: Option<usize>,
    pub warnings: Vec<String>,
}

/// Coefficients `0..=d(2g-1)` of `F(f_1, .., f_g)` decide membership in `I_d`.
fn check_len(g: usize, d: u32) -> usize {
    d as usize * (2 * g - 1) + 1
}

/// `F(f_1..f_g)` through `len` coefficients.
fn evaluate(p: &Poly, forms: &[QExp], len: usize) -> Result<Vec<CycNum>, CurveError> {
    let mut acc = vec![CycNum::zero(); len];
    for (m, c) in p.terms() {
        let s = eval_monomial(&m, forms, len)?;
        for (a, x) in acc.iter_mut().zip(s.coeffs()) {
            *a = a.add(&x.scale_int(&c));
        }
    }
    Ok(acc)
}

/// Index of the first nonzero coefficient of `F(f_1..f_g)` among the first
/// `len`, or `None` if all vanish.
pub fn vanishing_order(p: &Poly, basis: &InvariantBasis, len: usize) -> Result<Option<usize>, CurveError> {
    if basis.prec() < len {
        return Err(CurveError::InsufficientPrecision { needed: len, available: basis.prec() });
    }
    let forms: Vec<QExp> = basis.forms.iter().map(|f| f.truncate(len)).collect();
    Ok(evaluate(p, &forms, len)?.iter().position(|x| !x.is_zero()))
}

/// Basis of `I_d(C)`: homogeneous `F` of degree `d` with `F(f_1..f_g) = 0`,
/// from the rational kernel of the split monomial coefficients.
pub fn compute_id(basis: &InvariantBasis, d: u32) -> Result<Vec<Poly>, CurveError> {
    let g = basis.genus();
    if g < 2 {
        return Err(CurveError::GenusTooSmall(g));
    }
    let len = check_len(g, d);
    if basis.prec() < len {
        return Err(CurveError::InsufficientPrecision { needed: len, available: basis.prec() });
    }
    let forms: Vec<QExp> = basis.forms.iter().map(|f| f.truncate(len)).collect();
    let mons = monomials(g, d);
    let n = basis.n;
    let phi = CycNum::zero().lift(n).phi();
    // row per monomial, split coefficients along the columns
    let mut rows = Vec::with_capacity(mons.len());
    for m in &mons {
        let s = eval_monomial(m, &forms, len)?;
        rows.push(s.coeffs().iter().flat_map(|c| c.lift(n).coeffs()).collect::<Vec<BigRational>>());
    }
    let a = QMatrix::from_rows(rows);
    debug_assert_eq!(a.cols(), len * phi);
    let ker = kernel_int(&integral_rows(&a.transpose()));
    Ok((0..ker.rows()).map(|i| Poly::from_rationals(g, d, ker.row(i))).collect())
}

fn poly_rank(ps: &[Poly]) -> usize {
    if ps.is_empty() {
        return 0;
    }
    let rows = ps.iter().map(|p| p.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect()).collect();
    rank(&QMatrix::from_rows(rows))
}

/// Chooses generators of `I(C)` from `I_2`, `I_3` and `I_4` according to the
/// genus and `dim I_2`.
pub fn model_select(basis: &InvariantBasis) -> Result<CurveModel, CurveError> {
    let g = basis.genus();
    if basis.weight != 2 {
        return Err(CurveError::TableMismatch { table: basis.n, weight: basis.weight, group: basis.n });
    }
    if g < 2 {
        return Err(CurveError::GenusTooSmall(g));
    }
    let mut model = CurveModel {
        genus: g,
        hyperelliptic: g == 2,
        ideal_generators: Vec::new(),
        ideal_dims: BTreeMap::new(),
        complement_cubics: None,
        warnings: Vec::new(),
    };
    if g == 2 {
        return Ok(model);
    }
    let i2 = compute_id(basis, 2)?;
    let r = i2.len();
    model.ideal_dims.insert(2, r);
    if r == (g - 1) * (g - 2) / 2 {
        model.hyperelliptic = true;
        model.ideal_generators = i2;
        return Ok(model);
    }
    if r != (g - 2) * (g - 3) / 2 {
        return Err(CurveError::Inconsistent(format!(
            "dim I_2 = {r} for genus {g}, expected {} or {}",
            (g - 1) * (g - 2) / 2,
            (g - 2) * (g - 3) / 2
        )));
    }
    if g == 3 {
        let i4 = compute_id(basis, 4)?;
        model.ideal_dims.insert(4, i4.len());
        if i4.len() != 1 {
            return Err(CurveError::Inconsistent(format!("dim I_4 = {} for a plane quartic", i4.len())));
        }
        model.ideal_generators = i4;
        return Ok(model);
    }
    let i3 = compute_id(basis, 3)?;
    model.ideal_dims.insert(3, i3.len());
    let expected = (g - 3) * (g * g + 6 * g - 10) / 6;
    if i3.len() != expected {
        return Err(CurveError::Inconsistent(format!("dim I_3 = {} for genus {g}, expected {expected}", i3.len())));
    }
    let mut span: Vec<Poly> = i2.iter().flat_map(|f| (0..g).map(move |v| f.mul_var(v))).collect();
    let mut have = poly_rank(&span);
    let mut extra = Vec::new();
    for c in &i3 {
        if have == i3.len() {
            break;
        }
        span.push(c.clone());
        let next = poly_rank(&span);
        if next > have {
            extra.push(c.clone());
            have = next;
        } else {
            span.pop();
        }
    }
    let s = extra.len();
    if s > 0 {
        model.complement_cubics = Some(s);
        if s != g - 3 {
            model.warnings.push(format!("{s} complement cubics, expected {}", g - 3));
        }
    }
    model.ideal_generators = i2;
    model.ideal_generators.extend(extra);
    Ok(model)
}
