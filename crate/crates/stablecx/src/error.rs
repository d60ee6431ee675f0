use std::fmt;

/// Error type shared by all layers of the library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed input: dimension mismatch, inconsistent fixture data, bad arguments.
    Argument(String),
    /// The requested operation is not available for this ring kind.
    Unsupported(String),
    /// A stated precondition of an operation does not hold.
    Precondition(String),
    /// Fixture or certificate validation failed.
    Validation(String),
    /// Parsing of an element, file or expression failed.
    Parse(String),
}

impl Error {
    pub fn arg(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }
    pub fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
    pub fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Argument(m) => write!(f, "argument error: {m}"),
            Error::Unsupported(m) => write!(f, "unsupported operation: {m}"),
            Error::Precondition(m) => write!(f, "precondition failed: {m}"),
            Error::Validation(m) => write!(f, "validation failed: {m}"),
            Error::Parse(m) => write!(f, "parse error: {m}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
