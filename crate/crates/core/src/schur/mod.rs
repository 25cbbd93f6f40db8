//! Young symmetrizers, Schur projectors and harmonic projection on tensor powers.

mod group;
mod partition;
mod projector;
mod symmetric;

pub use group::*;
pub use partition::*;
pub use projector::*;
pub use symmetric::*;
