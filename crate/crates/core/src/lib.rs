//! Exact rational computations for equivariant cohomology of g*-algebras,
//! graded modules over polynomial rings, and Poincaré-series identities of
//! Killing foliations.

pub mod cartan;
pub mod complex;
pub mod error;
pub mod foliation;
pub mod fixtures;
pub mod gstar;
pub mod linalg;
pub mod module;
pub mod series;
pub mod spectral;

pub use error::{AlgebraError, Result};
pub use linalg::{Rational, RationalMatrix};
