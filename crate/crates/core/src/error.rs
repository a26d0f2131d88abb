use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("symbol {symbol} is outside the alphabet of size {size}")]
    SymbolOutOfRange { symbol: usize, size: usize },
    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },
    #[error("invalid list system: {0}")]
    InvalidLists(String),
    #[error("choice position {position} is invalid for a list of size {len}")]
    InvalidChoice { position: usize, len: usize },
    #[error("scripted choice stream ran out after {0} choices")]
    ChoicesExhausted(usize),
    #[error("scripted symbol {symbol} is not allowed here (allowed: {allowed:?})")]
    DisallowedSymbol { symbol: usize, allowed: Vec<usize> },
    #[error("malformed log: {0}")]
    MalformedLog(String),
    #[error("log is inconsistent with the adversary at move {mv}: expected {expected}, adversary plays {actual}")]
    BenMismatch {
        mv: usize,
        expected: usize,
        actual: usize,
    },
    #[error("malformed trace: {0}")]
    MalformedTrace(String),
    #[error("unknown adversary {0:?}")]
    UnknownBen(String),
    #[error("invalid adversary parameters: {0}")]
    InvalidBen(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("{0}")]
    InvalidArgument(String),
}
