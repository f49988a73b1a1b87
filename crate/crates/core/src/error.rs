use thiserror::Error;

/// Errors raised by the analysis library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("transition {0} is not enabled")]
    NotEnabled(String),

    #[error("unknown transition index {0}")]
    UnknownTransition(usize),

    #[error("operation is undefined on the zero vector")]
    ZeroVector,

    #[error("vector {0} is not a semiflow of the net")]
    NotSemiflow(String),

    #[error("completion search frontier exceeded the cap of {cap} vectors")]
    FrontierCapExceeded { cap: usize },

    #[error("decomposition search exceeded the cap of {cap} nodes")]
    NodeCapExceeded { cap: u64 },

    #[error("enumeration box of {size} points exceeds the limit of {limit}")]
    BoxTooLarge { size: u128, limit: u128 },

    #[error("enumeration unbounded: places {0:?} are not covered by any invariant")]
    UnboundedEnumeration(Vec<String>),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal consistency violation: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
