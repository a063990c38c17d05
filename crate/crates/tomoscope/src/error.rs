//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum TomoError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("operands live on different grids")]
    GridMismatch,

    #[error("zero-mode rejection: operand mean {mean:.6e} exceeds tolerance {tol:.1e}")]
    ZeroMode { mean: f64, tol: f64 },

    #[error("insufficient resolution: {0}")]
    Resolution(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown observable or symbol `{0}`")]
    UnknownName(String),

    #[error("mode count mismatch: symbol spans {symbol} mode(s), state has {state}")]
    ModeCount { symbol: usize, state: usize },

    #[error("representation error: {0}")]
    Representation(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, TomoError>;
