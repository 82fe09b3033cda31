use thiserror::Error;

/// Everything that can go wrong when building or transforming the objects in
/// this crate.
///
/// Validation failures (a tuple that is not even a member of `[n]^n`) are kept
/// apart from membership failures (a legal tuple that is not a parking
/// function), so callers can tell malformed input from a negative answer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("entry {value} at position {position} is outside [1, {n}]")]
    EntryOutOfRange {
        position: usize,
        value: usize,
        n: usize,
    },

    #[error("not a parking function")]
    NotParkingFunction,

    #[error("not a unit interval parking function")]
    NotUnitInterval,

    #[error("not a Fubini ranking: {0}")]
    NotFubiniRanking(String),

    #[error("invalid ordered set partition: {0}")]
    InvalidPartition(String),

    #[error("not a permutation of [{0}]")]
    InvalidPermutation(usize),

    #[error("index {index} is not an exceedance (sigma({index}) = {image})")]
    NotExceedance { index: usize, image: usize },

    #[error("expected an even number of blocks, found {0}")]
    OddBlockCount(usize),

    #[error("ordered set partition has a cyclical adjacency")]
    CyclicalAdjacency,

    #[error("expected {expected} blocks, found {found}")]
    BlockCount { expected: usize, found: usize },

    #[error("{what}: n = {n} is below the minimum {min}")]
    TooSmall {
        what: &'static str,
        n: usize,
        min: usize,
    },

    #[error("{what}: n = {n} exceeds the configured cap {cap}")]
    CapExceeded {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    #[error("parse error at position {position} near {token:?}: {message}")]
    Parse {
        position: usize,
        token: String,
        message: String,
    },

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
