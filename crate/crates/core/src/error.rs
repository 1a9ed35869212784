use thiserror::Error;

/// Errors raised by the exact algebra.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("operands live in different domain modes")]
    ModeMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("J is not available in slice mode")]
    JInSliceMode,
    #[error("zero divisors exist only in product mode")]
    SliceModeZeroDivisor,
    #[error("{0} is a zero divisor")]
    ZeroDivisor(String),
    #[error("{0} is not a zero divisor")]
    NotAZeroDivisor(String),
    #[error("{0} is not an idempotent")]
    NotIdempotent(String),
    #[error("not a unit imaginary constant")]
    NotUnitImaginary,
    #[error("zero function where a nonzero one is required")]
    ZeroFunction,
    #[error("zero polynomial has no squarefree decomposition")]
    ZeroPolynomial,
    #[error("tuple lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("empty operator tuple")]
    EmptyTuple,
    #[error("operator is an isomorphism: {0}")]
    Isomorphism(String),
    #[error("wrong Sylvester branch: expected {expected}, found {found}")]
    WrongBranch { expected: String, found: String },
    #[error("functions are not equivalent")]
    NotEquivalent,
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("point too close to a pole (denominator magnitude {0:e})")]
    NearPole(f64),
    #[error("point too close to the real axis (|q_v| = {0:e})")]
    NearRealAxis(f64),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
