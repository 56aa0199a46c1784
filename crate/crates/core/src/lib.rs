//! Exact analysis of generalized mass-action reaction networks.
//!
//! The crate builds the binomial equations that describe complex balancing
//! equilibria, computes deficiencies, checks sign-vector conditions for
//! uniqueness and multistationarity, and locates equilibria numerically.
//!
//! Linear algebra is generic over the scalar type; the aliases below fix the
//! exact ([`Rational`]) and floating-point instantiations used throughout.

pub mod catalog;
pub mod cli;
pub mod equilibria;
pub mod error;
pub mod graphkit;
pub mod model;
pub mod numerics;
pub mod random;
pub mod ratlinalg;
pub mod report;
pub mod scalar;
pub mod signs;

pub use error::{Error, Result};
pub use model::{Network, RateAssignment};
pub use ratlinalg::{Matrix, Sign, SignVector, SubspaceBasis};
pub use scalar::{FloatScalar, Rational, Ring, Scalar};

/// Exact matrix over the rationals.
pub type RationalMatrix = Matrix<Rational>;
/// Double-precision matrix.
pub type FloatMatrix = Matrix<f64>;
/// Single-precision matrix.
pub type Float32Matrix = Matrix<f32>;
