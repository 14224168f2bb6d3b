use thiserror::Error;

/// Errors produced by index validation, special-function evaluation and
/// quadrature.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// `two_j` was negative.
    #[error("two_j must be non-negative, got {0}")]
    NegativeJ(i64),
    /// `two_j` exceeds the bound up to which the internal integer
    /// arithmetic stays exact.
    #[error("two_j = {two_j} exceeds the supported maximum {max}")]
    JTooLarge { two_j: i64, max: i64 },
    /// A projection quantum number exceeds j in magnitude.
    #[error("|{name}| = {two_m}/2 exceeds j = {two_j}/2 in magnitude")]
    MOutOfRange {
        name: &'static str,
        two_m: i64,
        two_j: i64,
    },
    /// `two_j`, `two_m1`, `two_m2` must all be even or all be odd.
    #[error("mixed parity: two_j = {two_j}, two_m1 = {two_m1}, two_m2 = {two_m2}")]
    ParityMismatch {
        two_j: i64,
        two_m1: i64,
        two_m2: i64,
    },
    /// Angles must lie in [0, pi); the factor sqrt(theta/sin theta)
    /// diverges at pi.
    #[error("theta = {0} is outside [0, pi)")]
    AngleOutOfRange(f64),
    /// Bessel functions are evaluated for non-negative arguments only.
    #[error("Bessel argument must be non-negative, got {0}")]
    NegativeArgument(f64),
    /// Legendre polynomials are evaluated on [-1, 1].
    #[error("argument {0} is outside [-1, 1]")]
    ArgumentOutOfRange(f64),
    /// The alternating series lost so many digits to cancellation that
    /// fewer than 15 correct decimal digits remain.
    #[error("series cancellation of ~{cancelled_digits} digits exhausts the requested {digits}")]
    PrecisionExhausted { digits: u32, cancelled_digits: u32 },
    /// Adaptive quadrature exhausted its panel budget before reaching the
    /// requested tolerance.
    #[error("quadrature did not converge after {panels} panels (estimate {estimate:e}, error estimate {error_estimate:e})")]
    QuadratureNotConverged {
        panels: usize,
        estimate: f64,
        error_estimate: f64,
    },
    /// A relative error was requested against a denominator too close to
    /// zero to be meaningful.
    #[error("relative error undefined: |denominator| = {0:e} is below 1e-280")]
    DivisionByNearZero(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
