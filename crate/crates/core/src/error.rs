use thiserror::Error;

/// Reasons a sequence of integers fails to be a signed permutation (or word).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("invalid token {token:?}: expected a nonzero signed integer")]
    InvalidToken { token: String },
    #[error("zero entry at position {position}")]
    ZeroEntry { position: usize },
    #[error("absolute value {value} appears more than once")]
    RepeatedValue { value: u32 },
    #[error("entry {value} is out of range for a signed permutation of length {len}")]
    NotStandard { value: i32, len: usize },
    #[error("position {position} is out of range for length {len}")]
    PositionOutOfRange { position: usize, len: usize },
    #[error("invalid range {start}..={end} for length {len}")]
    InvalidRange {
        start: usize,
        end: usize,
        len: usize,
    },
    #[error("inflation vector has {vector} components but the permutation has length {perm}")]
    LengthMismatch { perm: usize, vector: usize },
    #[error("inflation vector component {position} is negative ({value})")]
    NegativeComponent { position: usize, value: i64 },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Perm(#[from] PermError),
    #[error("{what} = {requested} exceeds the configured ceiling of {ceiling}")]
    CeilingExceeded {
        what: &'static str,
        requested: usize,
        ceiling: usize,
    },
    #[error("inflating {pi} by <{vector}> does not give {sigma}")]
    InconsistentInflation {
        pi: String,
        vector: String,
        sigma: String,
    },
    #[error("move {mv} does not belong to the {family} family")]
    WrongFamily { mv: String, family: String },
    #[error("the move sequence does not sort {perm}")]
    NotSorting { perm: String },
    #[error("expected {expected} sample values, got {actual}")]
    SampleCount { expected: usize, actual: usize },
    #[error("invalid polynomial: {0}")]
    Polynomial(String),
    #[error("line {line}: {source}")]
    Line { line: usize, source: PermError },
    #[error("line {line}: {reason}")]
    Format { line: usize, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
