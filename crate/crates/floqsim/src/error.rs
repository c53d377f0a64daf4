//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("factor index {index} out of range for layout with {count} factors")]
    FactorIndex { index: usize, count: usize },

    #[error("layout mismatch: {0}")]
    LayoutMismatch(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("integration accuracy failure: {0}")]
    IntegrationAccuracy(String),

    #[error("monodromy unitarity defect {defect:.3e} exceeds {tol:.1e}")]
    UnitarityDefect { defect: f64, tol: f64 },

    #[error("degenerate monodromy spectrum: eigenphase gap {gap:.3e}")]
    DegenerateSpectrum { gap: f64 },

    #[error("degenerate steady state: {count} eigenvalues within {tol:.1e} of unit modulus")]
    DegenerateSteadyState { count: usize, tol: f64 },

    #[error("superoperator inaccuracy: leading eigenvalue {lambda} differs from 1 by {defect:.3e}")]
    SuperoperatorInaccuracy { lambda: String, defect: f64 },

    #[error("period grid too coarse: {n_t} samples (need at least {min})")]
    GridTooCoarse { n_t: usize, min: usize },

    #[error("truncation overflow: boundary occupancy {occupancy:.3e} at t = {t:.6} exceeds {tol:.1e}; increase n_max")]
    TruncationOverflow { occupancy: f64, t: f64, tol: f64 },

    #[error("fit failed: {0}")]
    FitFailure(String),

    #[error("eigendecomposition failed: {0}")]
    Linalg(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
