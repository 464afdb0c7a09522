use thiserror::Error;

/// Errors raised by tensor arithmetic, verification, constructions and planning.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch { left: Vec<usize>, right: Vec<usize> },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("invalid shape {0:?}: every dimension must be at least 1 and rank at least 1")]
    InvalidShape(Vec<usize>),

    #[error("entry count {got} does not match shape {shape:?}")]
    EntryCount { shape: Vec<usize>, got: usize },

    #[error("dimension {dim} out of range for rank {rank}")]
    DimOutOfRange { dim: usize, rank: usize },

    #[error("superposition collision at flat index {position}")]
    Collision { position: usize },

    #[error("inexact division by {divisor} at flat index {position}")]
    InexactDivision { divisor: i64, position: usize },

    #[error("entries are not all in the {alphabet} alphabet")]
    AlphabetViolation { alphabet: String },

    #[error("array is not binary")]
    NotBinary,

    #[error("set is not complementary")]
    NotComplementary,

    #[error("array pair is trivial (every dimension is 1)")]
    Trivial,

    #[error("structure check failed: {0}")]
    StructureFailed(String),

    #[error("output contains a zero entry at flat index {position} of array {array}")]
    NonPolyphase { array: usize, position: usize },

    #[error("pair is not disjoint")]
    NotDisjoint,

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("empty set")]
    EmptySet,

    #[error("not found: {0}")]
    NotFound(String),

    #[error("missing seed {0}")]
    MissingSeed(String),

    #[error("at {path}: {source}")]
    InRecipe { path: String, source: Box<Error> },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Strips recipe-path wrappers to expose the underlying cause.
    pub fn root(&self) -> &Error {
        match self {
            Error::InRecipe { source, .. } => source.root(),
            other => other,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
