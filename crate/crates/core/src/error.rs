use thiserror::Error;

/// Errors surfaced by the fallible operations of this crate.
///
/// Conditions that would falsify a structural identity (inexact division by
/// `X1 + X2`, a negative net X-exponent in a tower level, a singular graded
/// system) are reported as [`Error::Internal`]: they indicate a bug, never a
/// data condition.
#[derive(Debug, Error)]
pub enum Error {
    #[error("variable count mismatch: {0} vs {1}")]
    VarMismatch(usize, usize),
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("polynomial is not symmetric in its variables")]
    NotSymmetric,
    #[error("X-degree overflow: exponent {found} exceeds allowed {max} in slot {slot}")]
    DegreeOverflow { slot: usize, found: i64, max: i64 },
    #[error("q-series shifts differ by a non-integer: {0} vs {1}")]
    ShiftMismatch(String, String),
    #[error("insufficient data: {0}")]
    InsufficientData(String),
    #[error("evaluation point within {distance:.3e} of a pole")]
    PoleProximity { distance: f64 },
    #[error("target tolerance unreachable at truncation N = {n}")]
    ToleranceUnreachable { n: usize },
    #[error("numeric overflow: {0}")]
    Overflow(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
