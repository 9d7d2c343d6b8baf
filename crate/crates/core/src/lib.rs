//! Edge decompositions of even-dimensional hypercubes into equal-length
//! cycles and equal-length paths.
//!
//! The pipeline builds explicit cycle decompositions of `Q_n` (n even) by
//! recursively combining decompositions of smaller cubes: Cartesian products
//! of cycles form tori, tori are cut into equal cycles by a "wiggle" pattern,
//! and representing-set bookkeeping (splittable certificates) makes the
//! recursion compose. Everything produced here is checked by an exact,
//! bitset-backed verifier; nothing is trusted by construction.

pub mod compose;
pub mod construct;
pub mod cube;
pub mod cycles;
pub mod deco;
mod error;
pub mod fileio;
pub mod torus;
pub mod verify;

pub use error::{Error, Result};
