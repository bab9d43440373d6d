use thiserror::Error;

use crate::system::ValidationReport;

/// Errors raised by ring, group and crossed-product operations.
#[derive(Debug, Clone, Error)]
pub enum AlgebraError {
    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("enumeration unsupported: {0}")]
    UnsupportedEnumeration(String),

    #[error("size guard: {what} has {size} elements, limit is {limit} (set CROSSED_FORGE_MAX_ENUM to override)")]
    SizeGuard { what: String, size: String, limit: u64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("not a normal subgroup: {0}")]
    NotNormal(String),

    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("crossed system failed validation: {0}")]
    Validation(ValidationReport),

    #[error("hypothesis `{hypothesis}` failed: {witness}")]
    Hypothesis { hypothesis: String, witness: String },

    #[error("parse error in `{input}` at byte {position}: {message}")]
    Parse { input: String, position: usize, message: String },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;

impl AlgebraError {
    pub(crate) fn parse(input: &str, position: usize, message: impl Into<String>) -> Self {
        AlgebraError::Parse { input: input.to_string(), position, message: message.into() }
    }

    pub(crate) fn hypothesis(hypothesis: impl Into<String>, witness: impl Into<String>) -> Self {
        AlgebraError::Hypothesis { hypothesis: hypothesis.into(), witness: witness.into() }
    }
}
