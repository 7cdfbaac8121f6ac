use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what}: rank {requested} exceeds the configured ceiling {ceiling}")]
    ResourceLimit {
        what: &'static str,
        requested: usize,
        ceiling: usize,
    },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid segment: {0}")]
    InvalidSegment(String),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("cache record {line}: {message}")]
    Cache { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),

    #[error("induction failure: {reason} (state: {state})")]
    InductionFailure { reason: String, state: String },
}

impl Error {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }

    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
