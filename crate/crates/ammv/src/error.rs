use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("inadmissible input: {0}")]
    Inadmissible(String),
    #[error("out of domain: {0}")]
    Domain(String),
    #[error("mixed divergent prefix in {0}")]
    MixedPrefix(String),
    #[error("budget exhausted: {0}")]
    Budget(String),
    #[error("io: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
