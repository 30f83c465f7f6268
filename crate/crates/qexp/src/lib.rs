//! Truncated q-expansions `sum a_n q_w^n` with coefficients in a cyclotomic
//! field, plus the number-field arithmetic needed to take traces of
//! newform coefficients.

mod field;
mod series;
mod sturm;

pub use field::NumberField;
pub use series::{eval_monomial, trace_down, CoeffRing, QExp};
pub use sturm::{gamma1_index, sturm_bound, SturmBound};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum QExpError {
    #[error("width mismatch: {0} vs {1}")]
    WidthMismatch(u64, u64),
    #[error("need {needed} coefficients, only {available} known")]
    Precision { needed: usize, available: usize },
    #[error("t-twist needs width equal to level ({width} vs {level})")]
    TwistWidth { width: u64, level: u64 },
    #[error("coefficient {index} is not in the declared field: {reason}")]
    NotInField { index: usize, reason: String },
    #[error("exponent vector has length {got}, expected {expected}")]
    Arity { expected: usize, got: usize },
    #[error("invalid field polynomial: {0}")]
    BadPolynomial(String),
}
