use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: u16, bound: u16 },
    #[error("index list {0:?} is not strictly increasing")]
    NotIncreasing(Vec<u16>),
    #[error("expected a list of length {expected}, found {found}")]
    Length { expected: usize, found: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("word is not standard (fails at position {0})")]
    NotStandard(usize),
    #[error("not in the invariant subring within bounds; residual: {residual}")]
    NotInSubring { residual: String },
    #[error("kinds are not comparable")]
    Incompatible,
}

pub type Result<T> = std::result::Result<T, Error>;
