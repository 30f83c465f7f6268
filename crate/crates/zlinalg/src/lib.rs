//! Exact linear algebra over the integers, the rationals and prime fields.
//!
//! Large rational problems (echelon forms, kernels, solves) go through a
//! multimodular path: reduce modulo 62-bit primes, lift with CRT and rational
//! reconstruction, then verify the candidate exactly over Z.

mod error;
pub mod hnf;
pub mod matrix;
pub mod modp;
pub mod multimod;
pub mod numth;
pub mod rational;
pub mod saturate;
pub mod snf;

pub use error::LinalgError;
pub use hnf::{hnf, pivot_product, Hnf};
pub use matrix::{IntMatrix, Matrix, QMatrix, Ring};
pub use modp::rank_mod_p;
pub use rational::{kernel, left_kernel, rref, solve_left, Rref};
pub use saturate::saturate_rows;
pub use snf::{snf, Snf};
