//! Schwartz forms in the Fock model and the identities relating them.

mod bracket;
mod forms;
mod verify;

pub use bracket::*;
pub use forms::*;
pub use verify::*;
