//! Midpoint-radius ("ball") arithmetic over the reals and complexes.
//!
//! A [`Ball`] is a big-integer dyadic midpoint with an upward-rounded
//! radius; every operation returns a ball that contains all possible exact
//! results. [`CBall`] pairs two real balls.

mod complex;
mod mag;
mod real;

pub use complex::{roots_of_unity, CBall};
pub use mag::Mag;
pub use real::{pi, Ball};
