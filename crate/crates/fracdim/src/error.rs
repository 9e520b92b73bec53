//! Error type shared by all estimators and generators.

use thiserror::Error;

/// Errors produced by estimators, simulators and the study runner.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum FdError {
    /// Input contains a NaN or infinity; data is rejected at ingestion.
    #[error("non-finite value at index {index}")]
    NonFinite { index: usize },

    /// Fewer samples than the operation needs.
    #[error("series too short: need at least {required} samples, got {actual}")]
    SeriesTooShort { required: usize, actual: usize },

    /// Lag incompatible with the series length (l >= n, 2l >= n, or l > n/2).
    #[error("lag {lag} out of range for grid divisor {n}")]
    LagOutOfRange { lag: usize, n: usize },

    /// Log-log regression needs at least 2 distinct scales.
    #[error("degenerate regression: fewer than 2 distinct scales")]
    DegenerateRegression,

    /// A statistic the estimator must take the log of is zero
    /// (constant or perfectly periodic input).
    #[error("degenerate series: {what}")]
    DegenerateSeries { what: String },

    /// A 2D variation is zero, so its log-log fit is undefined.
    #[error("degenerate grid: {what}")]
    DegenerateGrid { what: String },

    /// Liebovitch-Toth exclusions left fewer than 2 box-count scales.
    #[error("insufficient scales after exclusions: {remaining} left")]
    InsufficientScales { remaining: usize },

    /// No lattice pair realizes the requested distance.
    #[error("no point pairs at squared lattice distance {k_squared}")]
    NoPairs { k_squared: u64 },

    /// Too few row/column transects produced a valid estimate.
    #[error("only {valid} valid transects, need at least {required}")]
    AllTransectsDegenerate { valid: usize, required: usize },

    /// Parameter outside its domain.
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    /// No nonnegative-definite circulant found within the doubling cap.
    #[error("circulant embedding failed: negative spectrum up to size {size}")]
    EmbeddingFailure { size: usize },

    /// Dimension estimate cannot parameterize the bootstrap model.
    #[error("estimate fd={fd} cannot be mapped to a valid fractal index")]
    EstimateOutOfRange { fd: f64 },

    /// Sliding window wider than the series.
    #[error("window of {width} samples does not fit a series of {len}")]
    WindowTooLarge { width: usize, len: usize },
}

pub type Result<T> = std::result::Result<T, FdError>;
