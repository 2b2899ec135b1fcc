use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} must be at least {min}, got {got}")]
    TooSmall {
        what: &'static str,
        min: usize,
        got: usize,
    },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric (defect {defect:e})")]
    NotSymmetric { defect: f64 },
    #[error("invalid parameter {what}: {reason}")]
    InvalidParameter { what: &'static str, reason: String },
    #[error("vanishing binorm for level {level}")]
    VanishingBinorm { level: usize },
    #[error("intertwining system has an empty kernel")]
    EmptyKernel,
    #[error("no inertia change found in [{lo}, {hi}]")]
    NoCrossings { lo: f64, hi: f64 },
    #[error("insufficient boundary points: {0}")]
    InsufficientBoundary(String),
    #[error("export failed: {0}")]
    Export(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require_at_least(what: &'static str, got: usize, min: usize) -> Result<()> {
    if got < min {
        Err(Error::TooSmall { what, min, got })
    } else {
        Ok(())
    }
}
