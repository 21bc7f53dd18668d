use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet ceiling k must be at least 1")]
    ZeroAlphabet,

    #[error("entry {value} at position {position} is outside [0, {k}]")]
    EntryOutOfRange { position: usize, value: u64, k: u8 },

    #[error("reduced words cannot contain 0 (position {position})")]
    ZeroInReducedWord { position: usize },

    #[error("position {element} is outside the ground set [1, {n}]")]
    PositionOutOfRange { element: usize, n: usize },

    #[error("dimension mismatch: expected n={expected_n}, k={expected_k}; found n={found_n}, k={found_k}")]
    DimensionMismatch {
        expected_n: usize,
        expected_k: u8,
        found_n: usize,
        found_k: u8,
    },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("the simplicial order is only defined for k = 1 (got k = {k})")]
    NotBinary { k: u8 },

    #[error("{what} = {value} is out of range (maximum {max})")]
    OutOfRange {
        what: &'static str,
        value: u64,
        max: u64,
    },

    #[error("cannot delete a coordinate from words of length 0")]
    EmptyWords,

    #[error("invalid compression: {0}")]
    InvalidCompression(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}
