//! Generalized analytic functions on the unit disk.
//!
//! The crate evaluates the Vekua operators
//!
//! ```text
//! T(f)(z) = -(1/π) ∫_D f(ζ)/(ζ - z) dA(ζ),
//! T̃(f)(z) = -(1/π) ∫_D [f(ζ)/(ζ - z) + z conj(f(ζ))/(1 - conj(ζ) z)] dA(ζ),
//! ```
//!
//! builds atomic boundary data and its holomorphic extension, and solves
//! Schwarz-type problems `∂ⁿw/∂z̄ⁿ = f` with prescribed real parts of the
//! boundary values of `w, ∂w/∂z̄, …`. Every solver comes with numerical
//! checks that report what they measured in a [`verify::VerificationReport`].
//!
//! ```
//! use num_complex::Complex64;
//! use vekua::sources::SourceTerm;
//! use vekua::vekua::{apply, Kernel, OperatorConfig};
//!
//! let cfg = OperatorConfig::default();
//! let z = Complex64::new(0.3, -0.4);
//! let w = apply(Kernel::T, &SourceTerm::one(), z, &cfg).unwrap();
//! assert!((w - z.conj()).norm() < 1e-9);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod atoms;
pub mod cli;
pub mod error;
pub mod hardy;
pub mod hilbert;
pub mod quadrature;
pub mod schwarz;
pub mod sources;
pub mod vekua;
pub mod verify;

pub use error::{Error, Result};
