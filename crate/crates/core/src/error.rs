use thiserror::Error;

use crate::io::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    /// A search exceeded its configured work budget. Never reported as an answer.
    #[error("resource limit exceeded: more than {limit} units of work")]
    ResourceLimit { limit: u64 },

    #[error(transparent)]
    Parse(#[from] ParseError),
}

impl Error {
    pub(crate) fn invalid_arg(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn invalid_instance(msg: impl Into<String>) -> Self {
        Error::InvalidInstance(msg.into())
    }
}
