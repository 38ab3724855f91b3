use thiserror::Error;

/// Errors shared across the crate. Domain-level "false" answers are never
/// errors; these cover malformed inputs and impossible requests only.
#[derive(Debug, Error)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),

    #[error("schema error at `{path}`: {message}")]
    Schema { path: String, message: String },

    #[error(
        "class overflow: source block `{class}` has {source_len} indices, target has {target_len}"
    )]
    ClassOverflow {
        class: &'static str,
        source_len: usize,
        target_len: usize,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("no such component: {0}")]
    NoSuchComponent(String),

    #[error("unsupported target: {0}")]
    UnsupportedTarget(String),

    #[error("search bound exceeded: {0}")]
    SearchBoundExceeded(String),

    #[error("stability condition undefined on this class: {0}")]
    ConditionUndefined(String),

    #[error("no integral room: {0}")]
    NoIntegralRoom(String),
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
