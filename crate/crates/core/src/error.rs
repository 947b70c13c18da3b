use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero scalar")]
    DivisionByZero,
    #[error("unassigned symbol `{0}`")]
    UnassignedSymbol(String),
    #[error("denominator evaluates to zero")]
    Pole,
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("invalid rank: m = {m}, n = {n} (both must be at least 1)")]
    InvalidRank { m: usize, n: usize },
    #[error("super bracket needs homogeneous operands")]
    MixedParity,
    #[error("invalid route: {0}")]
    InvalidRoute(String),
    #[error("relation `{0}` has no leading word")]
    DegenerateRelation(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("representation error: {0}")]
    Representation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
