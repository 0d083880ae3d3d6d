//! Poles of the S-matrix for one-dimensional symmetric potentials.
//!
//! Resonant, anti-resonant, bound and anti-bound states are located as zeros
//! of a residual function of the complex wave number `k`. Three independent
//! routes are provided: first-order Born residuals in closed form ([`born`]),
//! the exact Bessel-function solution of the exponential well ([`exact`]),
//! and direct integration of the Jost coefficients ([`jost`]). The
//! [`scattering`] module integrates the Schrödinger equation on the real axis
//! (and its continuation) for compact potentials.
#![no_std]
#![allow(clippy::excessive_precision, clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod born;
mod error;
pub mod exact;
pub mod jost;
pub mod numerics;
mod pole;
pub mod potentials;
pub mod probes;
pub mod scattering;

pub use error::Error;
pub use num_complex::Complex64;
pub use pole::{classify, Classification, Pole, PoleWarning, Provenance};
pub use potentials::{Parity, Potential};

pub type Result<T> = core::result::Result<T, Error>;
