//! Derived modes a_{(n)} of arbitrary states and the structural identities
//! they satisfy: Borcherds, commutator, associativity, skew-symmetry, locality.

mod checks;
mod engine;

pub use checks::{
    borcherds_residual, check_borcherds, check_skew_symmetry, field_locality_order, locality_order, residual_string,
    sampled_borcherds, skew_symmetry_mismatches, translate,
};
pub use engine::{act_vector, full_basis, parity_of, shifted_to_n, Evaluator, VertexModel};
