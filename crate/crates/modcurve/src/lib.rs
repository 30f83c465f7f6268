//! Modular curves `X_G` for `G ≤ GL2(Z/NZ)`: the forms fixed by `G`, the genus,
//! and the canonical ideal computed from `q`-expansions.

mod group;
mod ideal;
mod invariant;
mod lll;
mod poly;

pub use group::{validate_group, Group, GroupSpec, MAX_GROUP_ORDER};
pub use ideal::{compute_id, model_select, vanishing_order, CurveModel};
pub use invariant::{generator_action, invariant_subspace, InvariantBasis};
pub use lll::lll_reduce;
pub use poly::{monomials, Poly};

#[derive(Debug, thiserror::Error)]
pub enum CurveError {
    #[error(transparent)]
    Sl2(#[from] sl2::Sl2Error),
    #[error(transparent)]
    QExp(#[from] qexp::QExpError),
    #[error("-I is not in the group")]
    MissingMinusIdentity,
    #[error("determinants generate a subgroup of order {got} in (Z/{n}Z)^*, of order {expected}")]
    DetNotSurjective { n: u64, got: usize, expected: usize },
    #[error("group order exceeds {0}")]
    GroupTooLarge(usize),
    #[error("generator {index} has modulus {got}, expected {expected}")]
    ModulusMismatch { index: usize, got: u64, expected: u64 },
    #[error("action table is for N = {table}, k = {weight}; the group has modulus {group} and models need weight 2")]
    TableMismatch { table: u64, weight: u32, group: u64 },
    #[error("need q_w-expansions through index {needed}, have {available}")]
    InsufficientPrecision { needed: usize, available: usize },
    #[error("genus {0} is below 2")]
    GenusTooSmall(usize),
    #[error("inconsistent model: {0}")]
    Inconsistent(String),
}
