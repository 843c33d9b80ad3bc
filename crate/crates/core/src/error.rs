use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different quadratic fields")]
    IncompatibleFields,
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("empty input")]
    EmptyInput,
    #[error("index {0} beyond the expansion depth")]
    IndexBeyondDepth(i64),
    #[error("interval endpoints are equal")]
    EqualEndpoints,
    #[error("digit word is not admissible")]
    NotAdmissible,
    #[error("value is not a point of the 1/q grid")]
    NotGridPoint,
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("both streams are infinite and not eventually constant")]
    IncomparableStreams,
    #[error("sequence cannot be converted: {0}")]
    NotConvertible(String),
    #[error("tail is not supported here")]
    UnsupportedTail,
    #[error("the complement of the zero word is not defined")]
    ZeroWord,
    #[error("the maximal element has no successor")]
    NoSuccessor,
    #[error("instance too large for brute force")]
    TooLarge,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
