//! Exact computation of Gorenstein-projective modules over Nakayama and
//! monomial algebras, relative Auslander algebras, and the homological
//! invariants around them, all over a prime field.

pub mod algebra;
pub mod auslander;
pub mod complexes;
pub mod error;
pub mod exactfield;
pub mod fixtures;
pub mod gorenstein;
pub mod invariants;
pub mod modules;

pub use error::{Error, Result};
