//! Crate-wide error type.

use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CodeError {
    /// Operands belong to different fields (or carry different moduli).
    #[error("field parameter mismatch between operands")]
    ParamsMismatch,

    /// Subspace operands live in different ambient spaces.
    #[error("ambient space mismatch: {0}")]
    AmbientMismatch(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// An exhaustive routine would visit more states than the configured cap.
    #[error("enumeration cap exceeded: would visit {required} states, cap is {cap}")]
    EnumerationCapExceeded { required: u128, cap: u128 },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, CodeError>;
