use thiserror::Error;

/// Errors returned by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RbfError {
    #[error("grid size must be at least {min}, got {got}")]
    GridTooSmall { min: usize, got: usize },

    #[error("argument `{name}` must be finite, got {value}")]
    NonFinite { name: &'static str, value: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("unknown function `{0}`")]
    UnknownFunction(String),

    #[error("malformed input: {0}")]
    Format(String),
}

pub type Result<T, E = RbfError> = std::result::Result<T, E>;
