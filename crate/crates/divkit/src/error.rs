//! Error types shared across the crate.

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// Input data violates a precondition (nonpositive entry, bad sum, short vector).
    #[error("rejected input: {0}")]
    RejectedInput(String),

    /// A file could not be parsed; carries the record locus.
    #[error("parse error in {path} at record {record}: {message}")]
    Parse {
        path: String,
        record: usize,
        message: String,
    },

    /// An evaluation was requested outside a function's domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Richardson extrapolation did not converge.
    #[error("extrapolation failed: {0}")]
    Extrapolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
