use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum RusmError {
    #[error("ground set too large: n = {n} exceeds the {max}-element cap")]
    GroundSetTooLarge { n: usize, max: usize },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("element index {index} out of range for ground set of size {n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("exact enumeration over {n} elements exceeds the limit of {limit}")]
    ExactLimitExceeded { n: usize, limit: usize },

    #[error("{property} validation needs n <= {max}, got n = {n}")]
    ValidatorTooLarge { property: &'static str, n: usize, max: usize },

    #[error("instance schema error at `{path}`: {message}")]
    Schema { path: String, message: String },

    #[error("guarantee check needs brute force, infeasible at n = {n} (cap {max})")]
    CheckInfeasible { n: usize, max: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl RusmError {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        RusmError::InvalidParameter { name, reason: reason.into() }
    }

    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        RusmError::Schema { path: path.into(), message: message.into() }
    }
}

pub type Result<T> = std::result::Result<T, RusmError>;
