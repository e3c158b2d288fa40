use thiserror::Error;

/// Errors raised by the Casimir engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CasimirError {
    #[error("{quantity} = {value:e} is outside the domain: {reason}")]
    Domain {
        quantity: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("zeta = {zeta:e} rad/s is outside the table range [{min:e}, {max:e}] rad/s")]
    OutOfRange { zeta: f64, min: f64, max: f64 },

    #[error("{operation} is not supported for the {model} model")]
    UnsupportedModel {
        operation: &'static str,
        model: &'static str,
    },

    #[error("{what} did not converge (estimate {estimate:e}, error {error:e})")]
    Convergence { what: String, estimate: f64, error: f64 },

    #[error("no sign change in bracket [{lo:e}, {hi:e}] m")]
    Bracket { lo: f64, hi: f64 },

    #[error("quadratic fit rejected: relative residual {residual:e} exceeds {threshold:e}")]
    Fit { residual: f64, threshold: f64 },

    #[error("permittivity table, line {line}: {reason}")]
    Table { line: u64, reason: String },

    #[error("I/O error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, CasimirError>;

/// Rejects non-finite or non-positive values.
pub(crate) fn require_positive(quantity: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(CasimirError::Domain {
            quantity,
            value,
            reason: "must be finite and positive",
        })
    }
}
