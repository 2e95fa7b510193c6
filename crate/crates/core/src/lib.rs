//! Exact computations with Artin-Schelter regular quadratic algebras, their
//! Nakayama automorphisms, and graded Ore extensions `A[z; σ, δ]`.

pub mod algebra;
pub mod catalog;
pub mod error;
pub mod field;
pub mod linalg;
pub mod morphisms;
pub mod ore;

pub use error::{Error, ErrorCategory, Result};
pub use field::Field;

/// Arbitrary-precision rationals, the default scalar type.
pub type Rational = num_rational::BigRational;

pub type QMatrix = linalg::Matrix<Rational>;
pub type QTensor = linalg::Tensor<Rational>;
pub type QSubspace = linalg::Subspace<Rational>;
