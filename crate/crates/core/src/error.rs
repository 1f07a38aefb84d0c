use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("malformed complex: {0}")]
    MalformedComplex(String),

    /// Two distinct sample points share a value, so the normalized difference map is undefined.
    #[error("function is not injective: sample points {first} and {second} have equal values")]
    NotInjective { first: usize, second: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    /// A configuration whose centered tuple vanishes (within 1e-12).
    #[error("function is not almost {r}-injective: configuration {configuration:?} collapses")]
    NotAlmostRInjective { r: usize, configuration: Vec<usize> },

    #[error("witness construction failed: {0}")]
    ConstructionFailed(String),

    #[error("theorem {theorem} is inapplicable: {condition}")]
    InapplicableTheorem { theorem: &'static str, condition: String },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        Error::MalformedComplex(msg.into())
    }
}
