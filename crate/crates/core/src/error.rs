use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid letter {found:?} at position {position}, expected '0' or '1'")]
    InvalidLetter { position: usize, found: char },

    #[error("position {position} is out of range for a word of length {len}")]
    PositionOutOfRange { position: usize, len: usize },

    #[error("position {0} does not hold a 1")]
    NotAOne(usize),

    #[error("a generator needs at least one value")]
    EmptyGenerator,

    #[error("value {0} occurs more than once")]
    DuplicateValue(usize),

    #[error("value {value} is outside [1, {n}]")]
    ValueOutOfRange { value: i64, n: usize },

    #[error("cannot parse generator: {0}")]
    ParseGenerator(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("swap position {j} is out of range, expected 1 <= j < {n}")]
    SwapPositionOutOfRange { j: usize, n: usize },

    #[error("{0} is not a prefix normal generator")]
    NotPnGenerator(String),

    #[error("window search needs a descending pair, got a = {a}, b = {b}")]
    NotDescending { a: usize, b: usize },

    #[error("{0:?} is not prefix normal")]
    NotPrefixNormal(String),

    #[error("{0:?}1 is not prefix normal")]
    NotExtendable(String),

    #[error("length {n} exceeds the configured cap of {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("cache file {path}: {reason}")]
    CacheCorrupt { path: String, reason: String },

    #[error("level {n} failed its consistency check: {reason}")]
    Inconsistent { n: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
