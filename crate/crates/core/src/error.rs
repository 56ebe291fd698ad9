use thiserror::Error;

/// Everything that can go wrong while building groups, complexes and reports.
#[derive(Debug, Error)]
pub enum AtlasError {
    #[error("unknown group family `{0}`")]
    UnknownFamily(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{0} is not prime")]
    NotPrime(u32),

    #[error("unsupported parameter: {0}")]
    Unsupported(String),

    #[error("{what} cap exceeded: {actual} > {limit}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("subset is not closed under multiplication and inverses")]
    NotSubgroup,

    #[error("subgroup is not normal")]
    NotNormal,

    #[error("subgroup is not central")]
    NotCentral,

    #[error("index {index} out of range (0..{len})")]
    OutOfRange { index: usize, len: usize },

    /// A structural guarantee of the construction failed to hold. Carries the
    /// full diagnostic context.
    #[error("invariant violated: {0}")]
    Violation(String),

    #[error("malformed golden table: {0}")]
    MalformedGolden(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T, E = AtlasError> = std::result::Result<T, E>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err($crate::error::AtlasError::Violation(format!($($arg)+)));
        }
    };
}
pub(crate) use ensure;
