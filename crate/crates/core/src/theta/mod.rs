//! Representation numbers and harmonic payloads of definite lattices.
mod coefficient;
mod enumerate;
mod lattice;

pub use coefficient::*;
pub use enumerate::*;
pub use lattice::*;
