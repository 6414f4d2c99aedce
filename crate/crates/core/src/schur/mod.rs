//! The ξ-basis of the Schur algebra `S(m, r)`, its matrices on the tensor
//! space, group images, and the distinguished elements and index sets used
//! by the Levi and parabolic subalgebras.

mod basis;
mod group;
mod special;

pub use basis::{
    all_orbits, all_pair_types, all_tensor_entries, canonical_orbit, matrix_to_xi, orbits_over,
    permute_entries, psi_of_permutation, rank_of, schur_dim, tensor_entries, tensor_index,
    xi_basis_product, xi_multiply, xi_to_matrix, MultiIndex, OrbitPair, XiElement,
};
pub use group::{
    diagonal, embed_block, embed_enhanced, group_image_span, monomial_span_dim,
    phi_of_group_element, unipotent, unipotent_basis, GroupImage, GroupSpec,
};
pub use special::*;
