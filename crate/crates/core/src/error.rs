use thiserror::Error;

/// Errors produced by the optimizers, benchmarks and scheduling model.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument fell outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A configuration is internally inconsistent.
    #[error("invalid configuration: {0}")]
    Config(String),

    /// A registry lookup failed.
    #[error("unknown {kind} `{name}` (valid: {valid})")]
    Lookup {
        kind: &'static str,
        name: String,
        valid: String,
    },

    /// The objective returned NaN or an infinity.
    #[error("objective returned non-finite value {value} at iteration {iter}")]
    NonFiniteObjective { value: f64, iter: usize },

    /// The twin-vehicle simulation could not resolve a conflict.
    #[error("infeasible schedule: {reason}")]
    Infeasible { reason: String, penalty: f64 },

    #[error("dataset error: {0}")]
    Dataset(String),

    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Self::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
