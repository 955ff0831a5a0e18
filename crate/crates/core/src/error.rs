use crate::rational::ParseRationalError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Model or input violates a structural invariant (row length, unknown
    /// label, dimension mismatch, ...).
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("unknown variable {0:?}")]
    UnknownVariable(String),

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("horizon mismatch: {left} vs {right}")]
    HorizonMismatch { left: String, right: String },

    /// The dwell times are not multiples of the cell width; `factor` is the
    /// least admissible refinement factor.
    #[error("grid incompatible with dwell times: N={cells} needs to be a multiple of {factor}")]
    GridIncompatible { cells: usize, factor: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("capability cap exceeded: {0}")]
    Capability(String),

    #[error("empty candidate set")]
    Empty,

    /// An exact self-check failed. Indicates a bug, never bad input.
    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Rational(#[from] ParseRationalError),

    #[error("lp text line {line}: {msg}")]
    LpParse { line: usize, msg: String },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// Process exit code used by the command-line front end: 2 for invalid
    /// input, 3 for capability caps, 4 for failed self-verification.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Capability(_) => 3,
            Error::Verification(_) => 4,
            _ => 2,
        }
    }
}
