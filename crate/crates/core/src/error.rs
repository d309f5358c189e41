use thiserror::Error;

/// Errors raised while building or evaluating surface-carried objects.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid surface model: {0}")]
    InvalidSurface(String),

    #[error("curve index {index} out of range for {family} classes (0..={max})")]
    IndexOutOfRange {
        family: &'static str,
        index: usize,
        max: usize,
    },

    #[error("invalid multicurve: {0}")]
    InvalidMultiCurve(String),

    #[error("operation not supported on this surface: {0}")]
    Unsupported(String),

    #[error("invalid planar piece: {0}")]
    InvalidPiece(String),

    #[error("invalid rotation system: {0}")]
    InvalidMap(String),

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("invalid tags or facts: {0}")]
    InvalidFacts(String),

    #[error("contradiction on {attr}: {detail} (via {})", .chain.join(" -> "))]
    Contradiction {
        attr: String,
        detail: String,
        chain: Vec<String>,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
