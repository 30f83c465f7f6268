//! The right action of `SL2(Z)` and `GL2(Z/NZ)` on `S_k(Gamma(N), Q(zeta_N))`,
//! obtained from the Atkin-Lehner matrix of `Gamma0(N^2) ∩ Gamma1(N)`.

mod gl2;
mod table;
mod word;

pub use gl2::{lift_sl2, GL2Element};
pub use table::{build_action_table, vec_mul, ActionTable};
pub use word::{word_decompose, Letter, Word};

#[derive(Debug, thiserror::Error)]
pub enum Sl2Error {
    #[error(transparent)]
    Al(#[from] alcore::AlError),
    #[error("determinant {det} is not a unit modulo {n}")]
    NotUnit { det: i64, n: u64 },
    #[error("determinant {0} is not 1")]
    DetNotOne(i64),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u64, u64),
    #[error("vector has length {got}, expected {expected}")]
    Dimension { got: usize, expected: usize },
    #[error("N = {0} is below 2")]
    LevelTooSmall(u64),
    #[error("action table relation failed: {0}")]
    Relation(String),
}
