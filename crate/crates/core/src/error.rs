use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid membership function: {0}")]
    InvalidMembership(String),

    #[error("invalid universe [{lo}, {hi}]")]
    InvalidUniverse { lo: f64, hi: f64 },

    #[error("invalid variable `{name}`: {reason}")]
    InvalidVariable { name: String, reason: String },

    #[error("unknown term `{label}` for variable `{variable}`")]
    UnknownTerm { variable: String, label: String },

    #[error("invalid rule base: {0}")]
    InvalidRuleBase(String),

    #[error("expected {expected} inputs, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    /// The aggregated set has zero area, so its centroid does not exist.
    #[error("centroid of a zero-area set is undefined")]
    UndefinedCentroid,

    /// No rule fired on the upper path; the footprint is empty.
    #[error("output undefined: upper aggregate has zero area")]
    UndefinedOutput,

    #[error("blur delta must be finite and non-negative, got {0}")]
    NegativeDelta(f64),

    #[error("sampled sets do not share a universe and grid")]
    GridMismatch,

    #[error("lower membership exceeds upper: {0}")]
    FouViolation(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("non-finite value in {0}")]
    NonFinite(String),

    /// A config file parsed but a value is unusable; `key` is its dotted path.
    #[error("{key}: {message}")]
    Config { key: String, message: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0}")]
    Io(String),
}
