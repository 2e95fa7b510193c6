//! Exact linear algebra: matrices, subspaces and tensors.

mod map;
mod matrix;
mod subspace;
mod tensor;

pub use map::SubspaceMap;
pub use matrix::{AffineSolution, Matrix, Rref};
pub use subspace::Subspace;
pub use tensor::{index_word, power_dim, word_index, Tensor, Word};
