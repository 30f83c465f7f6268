//! Newforms: loading validated fixture data, recovering the nebentypus,
//! certified complex embeddings, pseudo-eigenvalues, and the action of
//! `W_N` and diamond operators on Atkin-Lehner-Li blocks.

mod blocks;
mod embed;
mod lambda;
mod record;
mod roots;

pub use blocks::{block_diamond_action, block_wn_action, enumerate_blocks, EigenBlock, UnitGroup};
pub use embed::{EmbeddedNewform, EmbeddedOrbit};
pub use lambda::{b_schedule, pseudo_eigenvalue, pseudo_eigenvalue_at, tail_bound, terms_needed, PseudoEigenvalue};
pub use record::{load_newforms, nebentypus_from_coeffs, FixtureFile, FixtureStore, NewformRecord};
pub use roots::isolate_roots;

#[derive(Debug, thiserror::Error)]
pub enum NewformError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("{label}: a_1 is not 1")]
    LeadingCoefficient { label: String },
    #[error("{label}: a_{{p^2}} = a_p^2 - eps(p) p^(k-1) fails at p = {p}")]
    HeckeRelation { label: String, p: u64 },
    #[error("{label}: primes up to sqrt(n_max) do not generate (Z/{modulus}Z)^*")]
    InsufficientPrimes { label: String, modulus: u64 },
    #[error("{label}: coefficient data gives a non-multiplicative character at {d}")]
    NonMultiplicative { label: String, d: u64 },
    #[error("{label}: supplied character value at {d} disagrees with the coefficients")]
    CharacterMismatch { label: String, d: u64 },
    #[error("no fixture for level {level}, weight {weight}")]
    MissingFixture { level: u64, weight: u32 },
    #[error("fixture for level {level} covers characters mod {cover}, need {needed}")]
    CoverMismatch { level: u64, cover: u64, needed: u64 },
    #[error("could not isolate the roots of {0}")]
    RootIsolation(String),
    #[error("{label}: conjugate embedding of root {index} not found")]
    ConjugateNotFound { label: String, index: usize },
    #[error("{label}: denominator series contains 0 for every scheduled b")]
    DenominatorVanishes { label: String },
    #[error("need {needed} coefficients for the requested radius, only {available} stored")]
    InsufficientCoefficients { needed: usize, available: usize },
    #[error("tail bound needs 0 < x < 1")]
    OutOfRange,
    #[error("{label}: pseudo-eigenvalue ball misses the unit circle")]
    NotUnimodular { label: String },
}
