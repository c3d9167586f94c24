//! Invariant bilinear forms, PCT candidates, scalar products and Gram positivity.

mod checks;
mod form;
mod pct;

pub use checks::{
    adjoint_mode, gram, gram_reports, hermitian_field_check, is_quasi_primary, mode_window,
    verify_unitarity, AdjointMode, GramReport,
};
pub use form::{
    generator_states, invariant_form, l1_tower, require_cft_type, BilinearForm, FormEngine,
    ScalarProduct,
};
pub use pct::{pct_sign, PctCandidate, PctMap};
