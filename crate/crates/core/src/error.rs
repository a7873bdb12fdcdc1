use thiserror::Error;

use crate::poly::VarId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no value assigned to {0}")]
    MissingAssignment(VarId),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("exact division failed: divisor does not divide dividend")]
    NotDivisible,
    #[error("word lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("resource limit: {what} is {got}, limit {limit}")]
    ResourceLimit { what: &'static str, got: usize, limit: usize },
    #[error("at least {min} samples required, got {got}")]
    SampleCountTooSmall { got: usize, min: usize },
    #[error("point is not Hermitian at {0}")]
    NotHermitian(VarId),
    #[error("|{0}| is not strictly inside the unit disc")]
    DiscViolation(VarId),
    #[error("leading principal minor {0} has a nonzero imaginary part")]
    NonRealMinor(usize),
    #[error("coefficient is not real")]
    NonRealCoefficient,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_limit(what: &'static str, got: usize, limit: usize) -> Result<()> {
    if got > limit {
        Err(Error::ResourceLimit { what, got, limit })
    } else {
        Ok(())
    }
}
