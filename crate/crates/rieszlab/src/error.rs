use thiserror::Error;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LabError {
    #[error("pole of the gamma function at {0}")]
    Pole(String),
    #[error("result overflows the floating-point range: {0}")]
    Overflow(String),
    #[error("argument outside the domain: {0}")]
    Domain(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("loss of precision: largest term / result = {ratio:.3e} exceeds guard {guard:.3e}")]
    PrecisionLoss { ratio: f64, guard: f64 },
    #[error("series did not converge: {0}")]
    Convergence(String),
    #[error("no convergence: {what} (error estimate {estimate:.3e}, tolerance {tolerance:.3e})")]
    NoConvergence {
        what: String,
        estimate: f64,
        tolerance: f64,
    },
    #[error("argument {0} outside the supported numeric range")]
    OutOfRange(String),
    #[error("fit failed: {0}")]
    Fit(String),
}

pub type LabResult<T> = Result<T, LabError>;
