use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("eigensolver failure: {0}")]
    SolverFailure(String),

    /// A solve inside a parameter sweep failed; carries the offending point.
    #[error("at {point}: {source}")]
    AtPoint {
        point: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn solver(msg: impl Into<String>) -> Self {
        Error::SolverFailure(msg.into())
    }

    /// True if this error, or the error it wraps, is a parameter error.
    pub fn is_invalid_parameter(&self) -> bool {
        match self {
            Error::InvalidParameter(_) => true,
            Error::SolverFailure(_) => false,
            Error::AtPoint { source, .. } => source.is_invalid_parameter(),
        }
    }
}
