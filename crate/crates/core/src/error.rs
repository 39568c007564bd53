use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// Argument outside the domain of a function or type.
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid scaling value {mu} for {kind} kernel")]
    InvalidScale { kind: &'static str, mu: f64 },

    #[error("root bracket [{lo}, {hi}] does not contain a sign change")]
    Bracket { lo: f64, hi: f64 },

    #[error("solver did not converge: residual {residual:e} after {iterations} iterations")]
    NoConvergence { residual: f64, iterations: usize },

    #[error("tail sum diverges for exponent {exponent}")]
    Divergence { exponent: f64 },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("target has zero energy")]
    ZeroDenominator,

    #[error("horizon {0} is too large for exhaustive enumeration")]
    HorizonTooLarge(usize),

    #[error("receptive field {filter}^{depth} overflows the cap {cap}")]
    ReceptiveFieldOverflow { filter: usize, depth: usize, cap: u64 },

    #[error("npy: {0}")]
    Npy(String),

    #[error("manifest: {0}")]
    Manifest(String),

    #[error("schema: {0}")]
    Schema(String),

    #[error("no result records found")]
    EmptyResults,

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] io::Error),
}
