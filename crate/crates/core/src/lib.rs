//! GRH-conditional bounds on the norms of prime ideals that generate the
//! ideal class group of a number field.
//!
//! The pipeline is:
//!
//! - [`numberfield`] validates a monic defining polynomial and derives the
//!   degree, signature and discriminant data.
//! - [`splitting`] enumerates prime-ideal norms by factoring the polynomial
//!   modulo rational primes, with an on-disk cache.
//! - [`analytic`] evaluates the explicit-formula linear form on triangle
//!   functions, including the closed-form archimedean integrals.
//! - [`quadform`] assembles the Gram matrix of the induced quadratic form on
//!   step functions and watches its inertia through an incremental LDLᵀ.
//! - [`search`] drives the basic bound `T(K)` and the improved bound `T₁(K)`.
//! - [`family`] builds the pure and biquadratic field families used for
//!   batch statistics.

pub mod analytic;
pub mod context;
mod error;
pub mod family;
pub mod numberfield;
pub mod quadform;
pub mod search;
pub mod splitting;

pub use context::FieldContext;
pub use error::{Error, Result};
pub use numberfield::{IntPolynomial, NumberField};
pub use quadform::StepParams;
pub use search::{bdydf, bound, BoundConfig, BoundReport};
pub use splitting::{IdealNormTable, SplitRecord};
