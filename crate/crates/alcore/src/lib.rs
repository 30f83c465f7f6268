//! The Atkin-Lehner matrix `W` of a space `S_k(Gamma)` with
//! `Gamma0(N) ∩ Gamma1(N) ⊆ Gamma ⊆ Gamma0(N)`, written in the distinguished
//! integral basis of the space and recovered exactly over `Q(zeta_Q)`.

mod basis;
mod bounds;
mod diamond;
mod matrix;
mod numeric;
mod pipeline;
mod pseudo;
mod reconstruct;

pub use basis::{saturate, trace_span, Saturation, Space, ZBasis};
pub use bounds::denominator_bounds;
pub use diamond::{conductor_q, diamond_matrices, diamond_matrix, trace_diamond, DiamondRep};
pub use matrix::{ball_mul, qmat_to_balls};
pub use numeric::{block_numerics, numeric_w, BlockNumerics};
pub use pipeline::{compute_al_matrix, PrecisionPolicy};
pub use pseudo::{exact_pseudo_eigenvalue, ExactPseudoEigenvalue};
pub use reconstruct::{reconstruct_w, verify_w, ALMatrix, Check, VerifyReport};

use cyclo::CycloError;
use newforms::NewformError;
use zlinalg::LinalgError;

#[derive(Debug, thiserror::Error)]
pub enum AlError {
    #[error(transparent)]
    Newform(#[from] NewformError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("trace span has rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("{0}")]
    NotIntegral(String),
    #[error("{label}: needs a_{needed} but the fixture stores {available} coefficients")]
    InsufficientCoefficients { label: String, needed: usize, available: usize },
    #[error("at {bits} bits: {reason}")]
    Precision { bits: u32, reason: String },
    #[error("precision exhausted after {attempts} attempts (last {bits} bits): {reason}")]
    PrecisionExhausted { attempts: u32, bits: u32, reason: String },
    #[error("inconsistent result: {0}")]
    Inconsistent(String),
    #[error("{0} is not a newform of level N in this space")]
    NotInSpace(String),
}
