//! Unitary vertex operator superalgebras on truncated graded Fock spaces.
//!
//! The [`fock`] layer provides exact graded bookkeeping, [`modes`] derives a_{(n)}
//! for arbitrary states, [`models`] builds concrete algebras, [`unitarity`] computes
//! invariant forms and Gram positivity, and [`analytic`] handles test functions,
//! smeared fields and two-point functions numerically.

pub mod analytic;
pub mod cli;
pub mod error;
pub mod fock;
pub mod linalg;
pub mod models;
pub mod modes;
pub mod report;
pub mod unitarity;

pub use error::{Error, Result};
