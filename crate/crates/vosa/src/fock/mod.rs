//! Graded Fock-space bookkeeping: half-integers, parity, scalars, PBW basis
//! states, sparse state vectors and the Z twist.

mod basis;
mod halfint;
mod parity;
mod scalar;
mod state;
mod ztwist;

pub use basis::{canonicalize, Alphabet, BasisState, GenId, Generator, Mode};
pub use halfint::HalfInt;
pub use parity::Parity;
pub use scalar::{binomial, factorial, Gq, Scalar, Tolerance};
pub use state::{CVector, StateVector, Vector};
pub use ztwist::apply_ztwist;
