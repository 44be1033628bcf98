use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("invalid spin value {0}; spins must be -1 or +1")]
    InvalidSpin(i64),

    #[error("invalid hidden string: {0}")]
    InvalidHiddenString(String),

    #[error("size out of range: {0}")]
    Size(String),

    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("refusing to enumerate {n_vars} variables (cap is {cap})")]
    TooManyVariables { n_vars: usize, cap: usize },

    #[error("model has no variables")]
    EmptyModel,

    #[error("invalid label: {0}")]
    InvalidLabel(String),

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("coefficient overflow while scaling to integers")]
    Overflow,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
