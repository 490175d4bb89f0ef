use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("blaschke factor requires |a| < 1 and r > 0, got a = {a}, r = {r}")]
    InvalidBlaschke { a: Complex64, r: f64 },

    /// A denominator came too close to zero during evaluation. Never a
    /// silent infinity: |den| < 1e-12 * (1 + |num|) is rejected.
    #[error("denominator vanishes near z = {at} (|den| = {denominator_modulus:.3e})")]
    PoleProximity {
        at: Complex64,
        denominator_modulus: f64,
    },

    #[error("function is numerically zero on the curve")]
    ZeroFunction,

    #[error("|f| dips to {min_modulus:.3e} on the curve, below threshold {threshold:.3e}")]
    ZeroOnCurve { min_modulus: f64, threshold: f64 },

    #[error("{what} did not converge")]
    NonConvergent { what: String },

    #[error("geometry violation: {0}")]
    GeometryViolation(String),

    #[error("zero polynomial has no degree")]
    ZeroPolynomial,

    #[error("operation requires polynomial degree >= {need}, got {got}")]
    DegreeTooSmall { need: usize, got: usize },

    /// A nonzero function produced no norming-set representatives. This
    /// signals an internal bug, not a bad input.
    #[error("empty norming set for a nonzero function (internal bug)")]
    EmptyNormingSet,

    #[error("invalid config: {0}")]
    InvalidConfig(String),
}
