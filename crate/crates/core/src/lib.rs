//! Single-vertex square complexes: construction, links, flat-plane
//! obstructions, Morse fiberings and monodromy of unit-weight fiberings.

pub mod cli;
pub mod complex;
pub mod error;
pub mod flat;
mod lattice;
pub mod link;
pub mod monodromy;
pub mod morse;
pub mod words;

pub use complex::{SquareComplex, Square};
pub use error::{Error, Result};
pub use words::{Alphabet, GenId, Letter, Sign, Word};
