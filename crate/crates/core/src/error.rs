use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{0} is a perfect square; its square root has a finite expansion")]
    PerfectSquareInput(BigInt),

    #[error("period of sqrt({radicand}) exceeds {limit} terms")]
    PeriodTooLong { radicand: BigInt, limit: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolation(String),

    #[error("radicand mismatch: starting point uses D={start}, fundamental unit uses D={unit}")]
    MismatchedD { start: BigInt, unit: BigInt },

    #[error("expected an odd n, got {0}")]
    EvenInput(BigInt),

    #[error("(delta, eps) = ({delta}, {eps}) does not satisfy delta = eps + 2 = 0 or 2 (mod 4)")]
    ParityViolation { delta: u64, eps: BigInt },

    #[error("unsupported case: {0}")]
    UnsupportedCase(String),

    /// A closed-form identity that must hold exactly did not. This is a
    /// falsification finding, not a user error.
    #[error("falsification: {0}")]
    Falsification(String),
}

impl Error {
    pub fn is_falsification(&self) -> bool {
        matches!(self, Error::Falsification(_))
    }
}
