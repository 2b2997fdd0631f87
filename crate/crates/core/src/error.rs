use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("coefficient mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("precision mismatch: {0} vs {1} bits")]
    PrecisionMismatch(usize, usize),
    #[error("weight mismatch: {0} vs {1}")]
    WeightMismatch(String, String),
    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(u64, u64),
    #[error("unsupported term: {0}")]
    UnsupportedTerm(String),
    #[error("operator outside domain: {0}")]
    Domain(String),
    #[error("truncation too small: {0}")]
    Truncation(String),
    #[error("not in catalog: {0}")]
    UnknownForm(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema violation at {0}: {1}")]
    Schema(String, String),
    #[error("numeric failure: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;
