use alloc::string::String;
use core::fmt;

/// Errors shared by every module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Caller supplied an argument outside the documented range.
    Argument(String),
    /// Input is well formed but the requested object does not exist.
    Domain(String),
    /// A denominator vanished for the chosen equivariant weights.
    Singular(String),
    /// Diagram text could not be parsed.
    Parse { line: usize, column: usize, message: String },
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    pub fn argument(msg: impl Into<String>) -> Self {
        Error::Argument(msg.into())
    }

    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn singular(msg: impl Into<String>) -> Self {
        Error::Singular(msg.into())
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Argument(m) => write!(f, "argument error: {m}"),
            Error::Domain(m) => write!(f, "domain error: {m}"),
            Error::Singular(m) => write!(f, "singular weights: {m}"),
            Error::Parse { line, column, message } => {
                write!(f, "parse error at {line}:{column}: {message}")
            }
        }
    }
}

impl core::error::Error for Error {}
