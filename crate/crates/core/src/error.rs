use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: String, got: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("element is not idempotent: {0}")]
    NotIdempotent(String),

    #[error("span is not closed under multiplication: {0}")]
    NotClosed(String),

    #[error("singular group parameters: {0}")]
    SingularParameters(String),

    #[error("oracle mismatch for {what}: computed {computed}, oracle {oracle}")]
    OracleMismatch {
        what: String,
        computed: usize,
        oracle: usize,
    },

    #[error("construction disagreement: {0}")]
    ConstructionDisagreement(String),

    #[error("split hypothesis unverified: {0}")]
    SplitUnverified(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn mismatch(expected: impl ToString, got: impl ToString) -> Error {
    Error::DimensionMismatch {
        expected: expected.to_string(),
        got: got.to_string(),
    }
}
