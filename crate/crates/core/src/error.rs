use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix is singular")]
    Singular,

    #[error("matrix is not positive definite (pivot {pivot} is not positive)")]
    NotPositiveDefinite { pivot: usize },

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// The value sits too close to an integer to separate it at the highest
    /// precision we are willing to use.
    #[error("ambiguous floor at {precision} bits")]
    AmbiguousFloor { precision: u32 },

    #[error("malformed lifted matrix: {0}")]
    MalformedLift(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("enumeration refused: dimension {dim} exceeds cap {cap}")]
    EnumerationRefused { dim: usize, cap: usize },

    #[error("search refused: roughly {estimated} candidates exceeds limit {limit}")]
    SearchRefused { estimated: u64, limit: u64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn dimension(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }
}
