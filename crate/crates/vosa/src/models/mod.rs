//! Concrete models: the free fermion, graded tensor products, and vacuum Verma
//! modules of the Virasoro, N=1 and N=2 algebras with their unitary quotients.

pub mod algebras;
mod checks;
mod descriptor;
pub mod lie;
mod model;

pub use checks::{cft_type_check, relation_check, superalgebra_check, translation_check, virasoro_check};
pub use descriptor::{ModelDescriptor, VermaKind, VermaParams};
pub use model::{
    build, build_custom, build_free_fermion, build_graded_tensor, build_verma, parity_counts,
    quotient_by_nullspace, GradedDim, VosaModel,
};
