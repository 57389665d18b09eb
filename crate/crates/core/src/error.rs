use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("discriminant mismatch: {left} vs {right}")]
    DiscriminantMismatch { left: u32, right: u32 },

    #[error("discriminant {0} is not a positive square-free integer")]
    BadDiscriminant(i64),

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("scalar mode mismatch between exact and numeric rays")]
    ModeMismatch,

    #[error("dimension {0} is below the minimum of 3")]
    DimensionTooSmall(usize),

    #[error("ray {index} is the zero vector")]
    ZeroRay { index: usize },

    #[error("ray {second} duplicates ray {first} (colinear)")]
    DuplicateRay { first: usize, second: usize },

    #[error("ray set is empty")]
    EmptyRaySet,

    #[error("vertices {0:?} form a clique larger than the dimension")]
    InvalidGeometry(Vec<usize>),

    #[error("no complete basis exists; nothing left after pruning")]
    EmptyAfterPrune,

    #[error("instance has no complete basis")]
    NoBasis,

    #[error("assignment length {found} does not match vertex count {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("vertex {vertex} lies in no basis; prune the instance first")]
    Unpruned { vertex: usize },

    #[error("{vertices} vertices exceeds the brute-force limit of {limit}")]
    TooLarge { vertices: usize, limit: usize },

    #[error("instance carries no ray coordinates")]
    MissingRays,

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
