use thiserror::Error;

/// Errors produced by curve and algebra operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An operation was applied outside its mathematical domain
    /// (zero divisor, zero quaternion where a direction is needed, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed input data: bad grid, mismatched lengths, non-finite values.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The tangent application vanishes somewhere on the curve.
    #[error("irregular curve at t={t}: |q'| = {speed:.3e} below threshold {threshold:.3e}")]
    IrregularCurve { t: f64, speed: f64, threshold: f64 },

    /// An operation that presumes arc-length parametrization received a
    /// curve whose speed deviates from 1.
    #[error("curve is not arc-length parametrized (max | |q'|-1 | = {deviation:.3e}); reparametrize first")]
    NotUnitSpeed { deviation: f64 },

    /// The construction degenerates everywhere (e.g. evolute of a line).
    #[error("{0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
