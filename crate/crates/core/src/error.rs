use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid base {0}: a base must be at least 2")]
    InvalidBase(String),

    #[error("domain error: {0}")]
    Domain(String),

    /// An exact identity evaluated to a nonzero residual. Reaching this means
    /// either a bug or a false theorem; it is never expected for valid input.
    #[error("identity `{name}` failed at {params}: residual {residual}")]
    IdentityFailed {
        name: String,
        params: String,
        residual: String,
    },

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
