use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty binary string")]
    Empty,

    #[error("invalid symbol {symbol:?} at position {position}; expected '0' or '1'")]
    InvalidSymbol { symbol: char, position: usize },

    #[error("run {index} has length 0; run lengths must be positive")]
    ZeroRun { index: usize },

    #[error("malformed run list {input:?}: {reason}")]
    RunSyntax { input: String, reason: String },

    #[error("string length {len} exceeds the generator limit {limit}")]
    TooLong { len: usize, limit: usize },

    #[error("enumeration refused: string length {len} exceeds oracle cap {cap}")]
    OracleCap { len: usize, cap: usize },

    #[error("binomial coefficient with negative upper index {0}")]
    NegativeBinomial(i64),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}
