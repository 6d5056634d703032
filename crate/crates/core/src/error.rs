use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },

    #[error("parse error at position {pos}: {message}")]
    Formula { pos: usize, message: String },

    #[error("base mismatch: {0} vs {1}")]
    BaseMismatch(u32, u32),

    #[error("invalid base {0} (must be at least 2)")]
    InvalidBase(u32),

    #[error("unknown track `{0}`")]
    UnknownTrack(String),

    #[error("missing value for variable `{0}`")]
    MissingVariable(String),

    #[error("unbound sequence `{0}`")]
    UnboundSequence(String),

    #[error("formula has free variables: {0}")]
    NotASentence(String),

    #[error("unsupported formula: {0}")]
    Unsupported(String),

    #[error("digit {digit} out of range for base {base}")]
    DigitOutOfRange { digit: u32, base: u32 },

    #[error("enumeration of {count} compositions exceeds the limit of {limit}")]
    TooExpensive { count: u128, limit: u128 },

    #[error("invalid pattern `{0}`")]
    Pattern(String),

    #[error("closed form verification failed at t = {0}")]
    Verification(u64),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}
