use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("pole: denominator vanishes at {0}")]
    Pole(String),
    #[error("cyclotomic prime mismatch: {0} vs {1}")]
    PrimeMismatch(u32, u32),
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("endpoint mismatch: {0}")]
    EndpointMismatch(String),
    #[error("fiber mismatch: {0} vs {1}")]
    FiberMismatch(i64, i64),
    #[error("matching condition violated at k = {0}")]
    MatchingViolation(i64),
    #[error("boundary condition violated below the window at k = {0}")]
    BoundaryViolation(i64),
    #[error("zero measure where a nonzero one is required")]
    ZeroMeasure,
    #[error("base point mismatch: {0}")]
    BasePointMismatch(String),
    #[error("window overflow: {0}")]
    WindowOverflow(String),
    #[error("function is not invariant under the unit group")]
    NotInvariant,
    #[error("set is not equivalent to the reference set: {0}")]
    NotEquivalent(String),
    #[error("extended group requires a vertical transform parameter, got first coordinate {0}")]
    NotVertical(i64),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
