//! TEM-mode mediated dispersion interactions between polarizable dipoles
//! placed along a transmission line.
//!
//! The crate is organised bottom-up:
//!
//! - [`specfun`]: sine/cosine integrals, Ei on the imaginary axis, K₀.
//! - [`quadrature`]: damped semi-infinite and regularized oscillatory integration.
//! - [`potential`]: the dimensionless potential F, multilevel pair energies,
//!   imaginary-axis (Wick) and real-axis energies, free-space comparators.
//! - [`mirror1d`]: Casimir interaction of reflectivity-characterised scatterers in 1d.
//! - [`modes`]: coax TEM area normalization and higher transverse mode envelopes.
//! - [`estimator`]: circuit-QED energy-shift predictions in laboratory units.
//!
//! Internally ħ = 1; the phase velocity c of the line is carried by each
//! [`potential::Transition`] (c = E/k) and defaults to 1 for the natural-unit
//! constructors.

// Negated comparisons are used on purpose so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod estimator;
pub mod mirror1d;
pub mod modes;
pub mod potential;
pub mod quadrature;
pub mod specfun;

pub use error::{Error, Result};
