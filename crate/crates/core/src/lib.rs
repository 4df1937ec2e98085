//! Hecke symmetries, reflection equation algebras and their representations.

pub mod error;
pub mod gz;
pub mod hecke;
pub mod poisson;
pub mod projector;
pub mod realg;
pub mod rep;
pub mod spectral;
pub mod symfun;

pub use error::CoreError;
pub use hecke::{Classification, HeckeSymmetry, SymmetryKind};
