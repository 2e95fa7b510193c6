//! Constructors and closed-form oracles for the polynomial algebras and the
//! noetherian AS-regular algebras of dimension 2.

mod dim2;
mod polynomial;
mod solutions;

pub use dim2::{
    admissibility_residuals, closed_form_mu_b, cy_classifier_dim2, dim2_delta_lr, dim2_hdet, dim2_nakayama_oracle,
    gamma_lift, CyVerdict, CyWitness, Dim2Family, Dim2Kind, Gamma,
};
pub use polynomial::{make_polynomial, polynomial_divergence_oracle, polynomial_sequence_pair, r_basis_tensor};
pub use solutions::{enumerate_solution, Dim2Case, SolutionInstance};

use crate::algebra::QuadraticAlgebra;
use crate::error::Result;
use crate::field::Field;

/// `k⟨x_1,x_2⟩/(x_1x_2 − q x_2x_1)`, `q ≠ 0`.
pub fn make_quantum_plane<F: Field>(q: F) -> Result<QuadraticAlgebra<F>> {
    Ok(Dim2Family::quantum(q)?.algebra())
}

/// `k⟨x_1,x_2⟩/(x_1x_2 − x_2x_1 − x_2²)`.
pub fn make_jordan_plane<F: Field>() -> QuadraticAlgebra<F> {
    Dim2Family::jordan().algebra()
}
