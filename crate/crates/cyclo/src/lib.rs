//! Exact arithmetic in cyclotomic fields `Q(zeta_n)`.
//!
//! Elements are kept in the power basis `1, zeta_n, ..., zeta_n^(phi(n)-1)`
//! with eager reduction modulo the cyclotomic polynomial. Reduction tables
//! are built once per conductor and shared between threads.

mod embed;
mod galois;
mod matrix;
mod num;
mod table;

pub use embed::roots;
pub use galois::GaloisChar;
pub use matrix::CycMatrix;
pub use num::CycNum;
pub use table::cyclotomic_polynomial;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycloError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("expected {expected} values, got {got}")]
    Length { expected: usize, got: usize },
    #[error("{0} is not a unit modulo {1}")]
    NotUnit(i64, u64),
    #[error("conductors {0} and {1} differ")]
    ConductorMismatch(u64, u64),
    #[error(transparent)]
    Linalg(#[from] zlinalg::LinalgError),
}

/// `Tr_{Q(zeta_n)/Q}(a)`.
pub fn trace_to_q(a: &CycNum) -> num_rational::BigRational {
    a.trace()
}

/// The unique `x` with `Tr(zeta_n^b x) = traces[b]`, `0 <= b < phi(n)`.
pub fn trace_reconstruct(traces: &[num_rational::BigRational], n: u64) -> Result<CycNum, CycloError> {
    CycNum::trace_reconstruct(traces, n)
}

/// Certified complex ball around the image of `a` under `zeta_n -> e^{2 pi i/n}`.
pub fn embed_complex(a: &CycNum, prec: u32) -> ball::CBall {
    a.embed(prec)
}
