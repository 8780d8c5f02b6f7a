use thiserror::Error;

/// Errors reported by code construction, decoding and simulation.
#[derive(Debug, Error)]
pub enum Error {
    #[error("block length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("list size {0} is not a power of two")]
    ListSizeNotPowerOfTwo(usize),
    #[error("list size {list} exceeds 2^{info} candidate paths")]
    ListTooLarge { list: usize, info: usize },
    #[error("invalid reliability sequence: {0}")]
    InvalidSequence(String),
    #[error("requested {count} information positions but block length is {n}")]
    TooManyInfoBits { count: usize, n: usize },
    #[error("expected {expected} bits, got {actual}")]
    WrongLength { expected: usize, actual: usize },
    #[error("CRC polynomial is empty")]
    EmptyPolynomial,
    #[error("CRC polynomial degree {degree} does not match CRC length {len}")]
    PolynomialDegree { degree: usize, len: usize },
    #[error("invalid rate {0}")]
    InvalidRate(f64),
    #[error("noise standard deviation must be positive, got {0}")]
    InvalidSigma(f64),
    #[error("flip index {0} is not a prunable information index")]
    InvalidFlipIndex(usize),
    #[error("alpha must be >= 1, got {0}")]
    InvalidAlpha(f64),
    #[error("confidence sets have different index domains")]
    DomainMismatch,
    #[error("empty path metric list")]
    EmptyMetrics,
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
