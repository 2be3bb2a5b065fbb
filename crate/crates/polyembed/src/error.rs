use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("incompatible field: sqrt({0}) vs sqrt({1})")]
    IncompatibleField(String, String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("asymptotically undecidable by this method: {0}")]
    Undecidable(String),
    #[error("not reducible / input outside C: {0}")]
    NotReducible(String),
    #[error("key-lemma hypotheses fail on this interval: {0}")]
    Hypotheses(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
