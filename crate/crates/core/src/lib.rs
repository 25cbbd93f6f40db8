//! Exact computations with Fock-model Schwartz forms for `O(p,q)`, harmonic
//! Schur projectors on tensor powers, and Fourier coefficients of vector-valued
//! theta series.

pub mod error;
pub mod linalg;
pub mod multilinear;
pub mod scalar;
pub mod schur;
pub mod schwartz;
pub mod theta;
pub mod weil;

pub use error::{Error, Result};
pub use scalar::{Rational, Scalar};
