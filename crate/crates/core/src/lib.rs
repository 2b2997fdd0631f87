//! Exact and big-float engine for harmonic Maass forms, the operators acting on
//! them, and the (𝔤, K)-modules they generate.

pub mod analytic;
pub mod arith;
pub mod catalog;
pub mod coeffring;
pub mod error;
pub mod gkmod;
pub mod json;
pub mod maassops;
pub mod mfexp;
pub mod real;
pub mod symtensor;
pub mod verify;

pub use coeffring::{Certainty, Coefficient, ExactCoeff, FloatCoeff, Scalar, Symbol};
pub use error::{Error, Result};
pub use real::{BigReal, Real};

/// Expansion with exact Gaussian-rational-times-symbol coefficients.
pub type ExactExpansion = mfexp::Expansion<ExactCoeff>;
/// Expansion with big-float complex coefficients.
pub type FloatExpansion = mfexp::Expansion<FloatCoeff>;
pub type ExactVV = symtensor::VVExpansion<ExactCoeff>;
pub type FloatVV = symtensor::VVExpansion<FloatCoeff>;
/// Big-float point evaluation and Poincaré/Eisenstein numerics at the working precision.
pub type BigComplex = num_complex::Complex<BigReal>;
