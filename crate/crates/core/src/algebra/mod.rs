//! Quadratic algebras and their Koszul data.

mod graded;
mod quadratic;

pub use graded::GradedPieces;
pub use quadratic::{CertifiedAlgebra, DifferentialRank, KoszulCertificate, QuadraticAlgebra};
