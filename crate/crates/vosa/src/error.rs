use thiserror::Error;

use crate::fock::{GenId, HalfInt};

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown generator id {0}")]
    UnknownGenerator(GenId),
    #[error("mode {0}_{{{1}}} is not a creation mode")]
    NotCreation(String, HalfInt),
    #[error("weight {weight} exceeds cutoff {cutoff}")]
    AboveCutoff { weight: HalfInt, cutoff: HalfInt },
    #[error("j-sum did not terminate below the ceiling {0}")]
    SumCeiling(i64),
    #[error("state is not homogeneous: {0}")]
    Inhomogeneous(String),
    #[error("invalid mode index {index} for a field of weight {weight}")]
    BadIndex { index: HalfInt, weight: HalfInt },
    #[error("{0} is not quasi-primary")]
    NotQuasiPrimary(String),
    #[error("model is not of CFT type: {0}")]
    NotCftType(String),
    #[error("no locality order below the ceiling {0}")]
    LocalityCeiling(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),
    #[error("band {band} too small: tail bound {tail:e} exceeds tolerance {tol:e}")]
    Band { band: usize, tail: f64, tol: f64 },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
