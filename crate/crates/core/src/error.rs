//! Shared error type for every analysis module.

use thiserror::Error;

/// Coarse failure class, used by front ends to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    /// Caller-supplied parameters are out of range.
    Validation,
    /// Input data is malformed, out of domain, or too short.
    Data,
    /// Inputs were well formed but the computation degenerated.
    Numeric,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("nonstationary parameters: alpha1 + beta1 = {persistence} >= 1")]
    NonstationaryParameters { persistence: f64 },
    #[error("insufficient data: need at least {need} observations, got {got}")]
    InsufficientData { need: usize, got: usize },
    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },
    #[error("nonpositive price {value} at index {index}")]
    NonPositivePrice { index: usize, value: f64 },
    #[error("ragged panel: row {row} has {got} columns, expected {expected}")]
    RaggedPanel {
        row: usize,
        expected: usize,
        got: usize,
    },
    #[error("degenerate series: {0}")]
    DegenerateSeries(&'static str),
    #[error("degenerate variable: panel row {row} has zero variance")]
    DegenerateVariable { row: usize },
    #[error("degenerate tail: all {k} tail observations equal the threshold")]
    DegenerateTail { k: usize },
    #[error("insufficient scales: {got} usable, need at least {need}")]
    InsufficientScales { got: usize, need: usize },
    #[error("numeric failure: {0}")]
    Numeric(String),
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        match self {
            Error::InvalidParameter(_) | Error::NonstationaryParameters { .. } => {
                ErrorCategory::Validation
            }
            Error::InsufficientData { .. }
            | Error::NonFinite { .. }
            | Error::NonPositivePrice { .. }
            | Error::RaggedPanel { .. } => ErrorCategory::Data,
            Error::DegenerateSeries(_)
            | Error::DegenerateVariable { .. }
            | Error::DegenerateTail { .. }
            | Error::InsufficientScales { .. }
            | Error::Numeric(_) => ErrorCategory::Numeric,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
