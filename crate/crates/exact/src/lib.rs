//! Exact scalars and dense matrices for Hecke symmetry computations.
//!
//! The scalar field is Q(q, a1, ..., ag): [`RatFunc`] keeps every value in a
//! canonical reduced form so equality is structural. [`ExactMatrix`] adds the
//! tensor operations (Kronecker products, embeddings, partial traces) used to
//! build operators on tensor powers of a vector space.

pub mod error;
pub mod int;
pub mod io;
pub mod matrix;
pub mod modp;
pub mod parse;
pub mod poly;
pub mod ratfunc;

pub use error::ExactError;
pub use int::Int;
pub use matrix::ExactMatrix;
pub use modp::ModPoint;
pub use parse::parse_scalar;
pub use poly::{Poly, Sym};
pub use ratfunc::{lambda, q_factorial, q_number, RatFunc};

pub use num_rational::BigRational;
