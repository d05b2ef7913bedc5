//! Necessary conditions for local minima of one-dimensional variational
//! problems along given candidate extremals, including the degenerate cases
//! where the Weierstrass and Legendre tests are silent.
//!
//! The crate is organised bottom-up:
//!
//! - [`expr`]: parse, differentiate and evaluate integrands.
//! - [`problem`]: problem data, piecewise paths, classical checks, quadrature.
//! - [`engine`]: excess-type functionals and theorem verdicts.
//! - [`oracle`]: needle variations and brute-force expansion fits.
//! - [`report`] and [`cli`]: rendering and the `varicheck` command.

// NaN inputs must fail `!(x > 0.0)`-style guards, so these stay negated.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod expr;

pub use error::{Error, Result};
pub mod problem;
pub mod quad;
pub mod engine;
pub mod oracle;
pub mod report;
pub mod cli;

#[cfg(test)]
mod testutil;
