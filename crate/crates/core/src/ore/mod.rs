//! Graded Ore extensions `B = A[z; σ, δ]` of certified algebras.

mod extension;
mod sequence;

pub use extension::{
    derivation_quotient_relations, divergence, extend_to_hat, nakayama_of_b, nakayama_of_b_with, ore_relations,
    twisted_superpotential_hat, CheckLevel, DivergenceResult, OreReport,
};
pub use sequence::{build_sequence_pair, build_sequence_pair_with, decompose_delta2, KernelChoice, SequencePair};
