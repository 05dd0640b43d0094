use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input outside an operation's stated domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// An adaptive integral exhausted its budget before reaching tolerance.
    /// Carries the best value found so that callers can diagnose (or detect
    /// genuine divergence, which surfaces as this error).
    #[error(
        "integration did not converge: value ~{value:.6e}, error estimate {error_estimate:.3e} \
         after {evaluations} evaluations"
    )]
    NonConvergence {
        value: f64,
        error_estimate: f64,
        evaluations: u64,
    },

    /// Multi-dimensional integration supports d <= 4 only.
    #[error("unsupported dimension {0} (this crate integrates up to d = 4)")]
    UnsupportedDimension(usize),

    /// The l1-minimization target is not within tolerance of the dictionary span.
    #[error("infeasible: best residual {residual:.3e} exceeds tolerance")]
    Infeasible { residual: f64 },

    /// Solver safety valve tripped (e.g. simplex cycling guard).
    #[error("numerical failure: {0}")]
    NumericalFailure(String),

    /// Invalid run configuration (CLI / config file).
    #[error("invalid config: {0}")]
    Config(String),

    /// I/O while writing reports.
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// CLI exit code convention: 0 success, 1 inequality violation,
    /// 2 numerical non-convergence, 3 invalid config.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NonConvergence { .. } | Error::NumericalFailure(_) | Error::Infeasible { .. } => 2,
            Error::Domain(_) | Error::UnsupportedDimension(_) | Error::Config(_) | Error::Io(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
