//! Exact-arithmetic workbench for Yang-Baxter systems built from
//! commutative algebra structures: construction of the constant and
//! coloured operator families, verification of Yang-Baxter systems as
//! polynomial identities, derivation of the associated functional-equation
//! system and reflection-algebra generator relations, and bounded search
//! for further solutions.

pub mod algebra;
pub mod commutator;
pub mod document;
pub mod error;
pub mod functional;
pub mod ncpoly;
pub mod parse;
pub mod ring;
pub mod search;
pub mod tensor;

pub use error::{Error, Result};
