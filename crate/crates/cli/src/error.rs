use casimir_core::CasimirError;
use thiserror::Error;

/// Exit code for invalid flags, files or parameters.
pub const EXIT_CONFIG: i32 = 2;
/// Exit code for a computation that did not converge or fit.
pub const EXIT_CONVERGENCE: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid {field}: {reason}")]
    Config { field: &'static str, reason: String },

    #[error("row a = {gap_um} um: {source}")]
    Row {
        gap_um: f64,
        #[source]
        source: CasimirError,
    },

    #[error(transparent)]
    Compute(#[from] CasimirError),

    #[error("cannot write {path}: {source}")]
    Output {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn config(field: &'static str, reason: impl Into<String>) -> Self {
        Self::Config {
            field,
            reason: reason.into(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Row { source, .. } | Self::Compute(source) => match source {
                CasimirError::Convergence { .. } | CasimirError::Fit { .. } | CasimirError::Bracket { .. } => {
                    EXIT_CONVERGENCE
                }
                _ => EXIT_CONFIG,
            },
            Self::Config { .. } | Self::Output { .. } => EXIT_CONFIG,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
