use thiserror::Error;

/// Errors raised by the chain engines and their oracles.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DominoError {
    #[error("invalid chain specification: {0}")]
    InvalidSpec(String),

    #[error("{what} = {value} is outside the allowed range {min}..={max}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },

    #[error("state is not normalized: squared norm {norm_sq} (tolerance 1e-9)")]
    NotNormalized { norm_sq: f64 },

    #[error("{n_sites} spins exceed the exact-engine cap of {cap}")]
    CapExceeded { n_sites: usize, cap: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operator is not Hermitian (max |H - H^dagger| = {defect:e})")]
    NotHermitian { defect: f64 },

    #[error("this engine needs a positive Ising coupling J")]
    MissingCoupling,

    #[error("invalid time grid: {0}")]
    InvalidGrid(String),

    #[error("quadrature needs an even node count of at least 4, got {0}")]
    InvalidQuadrature(usize),

    #[error("unsupported: {0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, DominoError>;
