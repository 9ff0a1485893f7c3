use thiserror::Error;

/// Errors raised by state construction, criteria evaluation and the oracle.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("expected {expected} amplitudes, got {got}")]
    WrongLength { expected: usize, got: usize },

    #[error("zero state")]
    ZeroState,

    #[error("local operator is not invertible")]
    SingularOperator,

    #[error("local operator outside sampling bounds: {0}")]
    OutOfBounds(String),

    #[error("invalid qubit permutation {0:?}")]
    InvalidPermutation(Vec<usize>),

    #[error("invalid tolerance: {0}")]
    InvalidTolerance(&'static str),

    #[error("({i},{j}),({k},{l}) is not a pair residual: needs i+j=k+l and i^j=k^l within range")]
    InvalidPair { i: usize, j: usize, k: usize, l: usize },

    #[error("flag pattern {0} cannot occur for any state")]
    NotOccurViolation(String),

    #[error("conflicting 4-qubit verdicts: {0} and {1}")]
    ConflictingVerdicts(String, String),

    #[error("factorization does not reproduce the state (max deviation {0:e})")]
    ReassemblyFailure(f64),

    #[error("rank pattern {0:?} is impossible for a pure state")]
    ImpossibleRankPattern([u8; 3]),

    #[error("invalid qubit selection: {0}")]
    InvalidQubits(String),
}

pub type Result<T> = std::result::Result<T, Error>;
