use thiserror::Error;

/// Errors raised by the series, partition, and ideal machinery.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A coefficient below the requested power of `q` is nonzero.
    #[error("series is not divisible by q^{power}: coefficient of q^{degree} is {value}")]
    NonDivisible {
        power: usize,
        degree: usize,
        value: String,
    },

    #[error("part sizes must be positive, got {0}")]
    InvalidPart(i64),

    #[error("comparison up to q^{requested} exceeds the certified range q^{available}")]
    TruncationTooShort { requested: usize, available: usize },

    #[error("index {index} is outside 1..={r}")]
    IndexOutOfRange { index: usize, r: usize },

    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),

    #[error("degree {degree} exceeds the ideal truncation {trunc}")]
    DegreeBeyondTruncation { degree: usize, trunc: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
