use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomials belong to different rings")]
    RingMismatch,

    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,

    #[error("polynomial is not homogeneous: {0}")]
    NonHomogeneous(String),

    #[error("computation budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("genericity failure: {0}")]
    Genericity(String),

    #[error("input cycle is not equidimensional: {0}")]
    MixedDimension(String),

    #[error("origin is not an isolated point (no stabilization up to m^{cap})")]
    NonIsolated { cap: u32 },

    #[error("ideal is not primary to the maximal ideal at the origin (codimension {kappa} < {n})")]
    NotPrimary { kappa: usize, n: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("check failed: {0}")]
    CheckFailed(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::CheckFailed(_) => 2,
            Error::Genericity(_) => 3,
            Error::BudgetExceeded(_) => 4,
            Error::Parse { .. } => 5,
            _ => 1,
        }
    }
}
