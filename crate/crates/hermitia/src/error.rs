use std::path::PathBuf;

use thiserror::Error;

/// A syntax or consistency problem in an input document.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum HermitiaError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Core(#[from] hermitia_core::Error),
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("no almost complex structure: add an `acs` block or pass --acs")]
    MissingAcs,
    #[error("unknown theorem `{0}`; expected one of 3.4, 4.1, w4, foliation, magnin")]
    UnknownTheorem(String),
    #[error("malformed grid spec: {0}")]
    Grid(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl HermitiaError {
    /// Exit status: 2 for usage and parse problems, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            HermitiaError::Parse(_)
            | HermitiaError::Read { .. }
            | HermitiaError::UnknownTheorem(_)
            | HermitiaError::Grid(_)
            | HermitiaError::Config(_)
            | HermitiaError::MissingAcs => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, HermitiaError>;
