//! Ghost measures of affine 2-regular sequences
//! `f(2n) = A0 f(n) + b0`, `f(2n+1) = A1 f(n) + b1`.
//!
//! Exact integer and rational arithmetic is used wherever the quantity is
//! rational; floating point appears only in Fourier coefficients, densities
//! and logarithmic diagnostics.

pub mod approximant;
pub mod cli;
pub mod error;
pub mod fourier;
pub mod ghost;
pub mod linrep;
pub mod numeric;
pub mod sequence;

pub use approximant::{build_comb, Approximant, DyadicInterval};
pub use error::{Error, Result};
pub use ghost::{classify, LebesgueClass, LebesgueKind};
pub use sequence::{catalog_lookup, AffineParams, CaseLabel, Limits};
