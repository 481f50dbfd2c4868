use std::fmt;

use crate::numeric::Natural;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// The condition a rejected Δ failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaViolation {
    /// Δ = 0.
    Zero,
    /// Δ does not divide the target (`a²` or `k`).
    NotDivisor,
    /// Δ and target/Δ differ in parity, so the computed leg is not an integer.
    ParityMismatch,
    /// Δ ≥ a for triples, or Δ² ≥ k for tuples; the computed leg would not be positive.
    TooLarge,
}

impl fmt::Display for DeltaViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msg = match self {
            DeltaViolation::Zero => "delta must be positive",
            DeltaViolation::NotDivisor => "delta does not divide the sum of squares",
            DeltaViolation::ParityMismatch => "delta and its cofactor differ in parity",
            DeltaViolation::TooLarge => "delta is too large for a positive leg",
        };
        f.write_str(msg)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("factorization of {value} exceeded the effort budget of {limit} splitter iterations")]
    BudgetExceeded { value: Natural, limit: u64 },

    #[error("invalid delta {delta}: {violation}")]
    InvalidDelta {
        delta: Natural,
        violation: DeltaViolation,
    },

    #[error("brute-force oracle refused input {value}: above cap {cap}")]
    OracleCapExceeded { value: Natural, cap: Natural },

    #[error("value {value} exceeds the magnitude limit {limit}")]
    MagnitudeExceeded { value: Natural, limit: Natural },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invalid_delta(delta: &Natural, violation: DeltaViolation) -> Self {
        Error::InvalidDelta {
            delta: delta.clone(),
            violation,
        }
    }
}
