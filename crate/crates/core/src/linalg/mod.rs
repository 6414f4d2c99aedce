//! Exact rational linear algebra over sparse vectors and matrices.

mod algebra;
mod matrix;
mod modp;
mod subspace;
mod vector;

pub use algebra::{algebra_closure, split_commutative, AlgebraHandle, Structure};
pub use matrix::{commutant, span, span_in, subspace_matrices, MatrixQ};
pub use modp::ModpEchelon;
pub use subspace::{kernel_of_images, null_space, Echelon, Subspace};
pub use vector::{lincomb, SparseVec};
