use thiserror::Error;

/// Errors raised by the toolkit.
///
/// Every variant names the precondition that was violated so that the
/// command-line front end can print it as a one-line diagnostic.
#[derive(Debug, Clone, PartialEq, Error)]
#[non_exhaustive]
pub enum Error {
    #[error("argument {value} exceeds the configured limit {limit}")]
    ResourceLimit { value: u64, limit: u64 },

    #[error("result overflows double precision")]
    Overflow,

    #[error("a probability space needs at least one outcome")]
    ZeroCount,

    #[error("event index {index} is out of range for a space of {len} outcomes")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("prior probabilities sum to {0}, not 1")]
    PriorSumNotOne(String),

    #[error("total probability of the evidence is zero")]
    ZeroEvidence,

    #[error("prior probability of cause {0} is not positive")]
    NonpositivePrior(usize),

    #[error("independence checks need at least two events")]
    TooFewEvents,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operation needs a discrete law")]
    ContinuousLaw,

    #[error("operation needs a continuous law")]
    DiscreteLaw,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("standard deviation is zero")]
    ZeroVariance,

    #[error("mean is zero")]
    ZeroMean,

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("exponents {p} and {q} are not conjugate")]
    ExponentMismatch { p: f64, q: f64 },

    #[error("column {0} has zero marginal probability")]
    ZeroMarginal(usize),

    #[error("value {0} is not an integer")]
    NonIntegerSupport(f64),

    #[error("no lattice point falls in the window [{a}, {b}]")]
    EmptyWindow { a: f64, b: f64 },

    #[error("parse error at row {row}, column {column}: {message}")]
    Parse { row: usize, column: usize, message: String },

    #[error("probabilities sum to {0}, not 1")]
    Normalization(String),

    #[error("{0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
