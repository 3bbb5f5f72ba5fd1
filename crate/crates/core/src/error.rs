use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A request would materialize more data than the configured ceiling allows.
    #[error("resource limit: {what} = {value} exceeds the configured maximum {max}")]
    ResourceLimit {
        what: &'static str,
        value: u64,
        max: u64,
    },

    /// An argument outside the domain where the operation is defined.
    #[error("domain error in {op}: {reason}")]
    Domain { op: &'static str, reason: String },

    /// A factorization that does not describe its text.
    #[error("structural error at phrase {phrase}: {reason}")]
    Structural { phrase: usize, reason: String },
}

impl Error {
    pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            op,
            reason: reason.into(),
        }
    }

    pub(crate) fn structural(phrase: usize, reason: impl Into<String>) -> Self {
        Error::Structural {
            phrase,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
