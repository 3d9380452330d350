use thiserror::Error;

/// Errors raised by the library. The CLI maps each variant to an exit code.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A requested size exceeds a configured resource cap.
    #[error("resource cap exceeded: {what} = {requested} (limit {limit})")]
    ResourceCap {
        what: &'static str,
        requested: u64,
        limit: u64,
    },

    /// Catalog lookup failed.
    #[error("unknown catalog entry `{name}`; valid names: {valid}")]
    UnknownCatalog { name: String, valid: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
