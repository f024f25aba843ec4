use std::fmt;

use thiserror::Error;

/// 1-based line and column in the input text.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Location {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KminkError {
    #[error("syntax error at {at}: {message}")]
    Syntax { at: Location, message: String },
    #[error("unknown symbol `{name}` at {at}")]
    UnknownSymbol { name: String, at: Location },
    #[error("index {index} out of range for `{name}` at {at}")]
    IndexOutOfRange { name: String, index: String, at: Location },
    #[error("type error: {0}")]
    Type(String),
    #[error("element is not unitary: {0}")]
    NotUnitary(String),
    #[error("charge must be invertible, got {0}")]
    NonInvertibleCharge(String),
    #[error("config error at line {line}: {message}")]
    Config { line: usize, message: String },
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("{0}")]
    Io(String),
}

impl KminkError {
    /// Errors caused by malformed input rather than a failed computation.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            KminkError::Syntax { .. }
                | KminkError::UnknownSymbol { .. }
                | KminkError::IndexOutOfRange { .. }
                | KminkError::Config { .. }
                | KminkError::UnknownSuite(_)
        )
    }
}

impl From<std::io::Error> for KminkError {
    fn from(e: std::io::Error) -> Self {
        KminkError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, KminkError>;
