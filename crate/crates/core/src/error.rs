//! Error type shared by every module of the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in Z[i]")]
    DivisionByZero,
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,
    #[error("cannot parse {0:?} as a Gaussian integer")]
    Parse(String),
    #[error("symbol denominator must have odd norm")]
    EvenNormDenominator,
    #[error("modulus must be odd and nonzero")]
    BadModulus,
    #[error("arguments are not coprime")]
    NotCoprime,
    #[error("operand must have odd real part and even imaginary part")]
    ParityShape,
    #[error("norm {0} exceeds the trial-division factorization bound")]
    NormTooLarge(u64),
    #[error("value is not invertible")]
    NotInvertible,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("unknown statement {0:?}")]
    UnknownStatement(String),
    #[error("statement {0} has no registered parent theorem")]
    NoParent(&'static str),
    #[error("parameter out of shape for {0}: {1}")]
    ParamShape(&'static str, String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
