use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in 2..=2^31-1")]
    NotPrime(u64),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("operands live in different polynomial rings")]
    RingMismatch,
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("the unit ideal is not allowed here")]
    UnitIdeal,
    #[error("zero element: {0}")]
    ZeroElement(String),
    #[error("not a parameter ideal: dimension dropped by {achieved}, expected {expected}")]
    HeightDeficiency { expected: usize, achieved: usize },
    #[error("unsupported context: {0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
