use thiserror::Error;

/// Errors raised by the computational routines.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TautError {
    /// An argument lies outside the domain of the operation.
    #[error("invalid input: {0}")]
    Domain(String),

    /// A configured enumeration bound would be exceeded.
    #[error("resource cap exceeded: {what} = {value} exceeds cap {cap}")]
    ResourceCap {
        what: &'static str,
        value: i64,
        cap: i64,
    },

    #[error("insufficient samples: linear system has rank {rank} < {unknowns} unknowns")]
    InsufficientSamples { rank: usize, unknowns: usize },

    #[error("degree bounds violated: samples are inconsistent with degrees {degmin}..={degmax}")]
    DegreeBoundsViolated { degmin: u32, degmax: u32 },

    #[error("missing Hodge integral for psi exponents {exps:?}, lambda index {k}")]
    MissingHodge { exps: Vec<u32>, k: u32 },

    #[error("unsupported decoration: {0}")]
    UnsupportedDecoration(String),

    #[error("linear system is inconsistent: {0}")]
    Inconsistent(String),

    /// A condition that should hold for every valid input failed.
    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for TautError {
    fn from(e: std::io::Error) -> Self {
        TautError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, TautError>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(TautError::Domain(msg.into()))
}
