use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum MonigError {
    /// A value violated a domain constraint (e.g. a NIG parameter bound).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("negative weight at index {0}")]
    NegativeWeight(usize),

    #[error("shape mismatch in {context}: expected {expected}, got {got}")]
    ShapeMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    /// The recorded computation graph was already released.
    #[error("computation graph already released")]
    GraphConsumed,

    #[error("parse error at row {row}, column {col}: {reason}")]
    Parse {
        row: usize,
        col: usize,
        reason: String,
    },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("split error: {0}")]
    Split(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// A binary-label metric received only one class.
    #[error("labels contain a single class")]
    SingleClass,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl MonigError {
    pub fn domain(msg: impl Into<String>) -> Self {
        MonigError::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, MonigError>;
