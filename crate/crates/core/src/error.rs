use thiserror::Error;

/// Errors raised while validating inputs or evaluating probabilities.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("empty output pattern: the vacuum probability is computed separately")]
    EmptyPattern,

    #[error("port {port} out of range for a {dim}-port interferometer")]
    PortOutOfRange { port: usize, dim: usize },

    #[error("odd number of photons ({0}); photons arrive in pairs")]
    OddPhotonNumber(usize),

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("invalid Schmidt spectrum: {0}")]
    InvalidSpectrum(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("invalid cycle type: {0}")]
    InvalidCycleType(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{what} = {value} exceeds the configured limit {limit}")]
    ResourceGuard {
        what: &'static str,
        value: usize,
        limit: usize,
    },

    #[error("tolerance check failed: {0}")]
    Tolerance(String),

    #[error("integer overflow: {0}")]
    Overflow(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceGuard { .. } | Error::Overflow(_) => 3,
            Error::Tolerance(_) => 4,
            Error::Usage(_) => 64,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
