//! Error types shared across the toolkit.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("failed to read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("line {line}: expected {expected} columns, found {found}")]
    RaggedRow {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("line {line}: non-numeric token {token:?}")]
    BadToken { line: usize, token: String },

    #[error("line {line}: non-finite value {value}")]
    NonFinite { line: usize, value: f64 },

    #[error("dataset needs at least 2 points, found {0}")]
    TooFewPoints(usize),

    #[error("all points are identical; dataset has zero diameter")]
    AllPointsIdentical,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("firefly K mismatch: {left} vs {right}")]
    KMismatch { left: usize, right: usize },

    #[error("K = {k} out of range [{lo}, {hi}]")]
    KOutOfRange { k: usize, lo: usize, hi: usize },

    #[error("separation needs at least 2 centroids, found {0}")]
    SeparationNeedsTwo(usize),

    #[error("tour needs at least {min} points, found {found}")]
    TourTooSmall { min: usize, found: usize },

    #[error("brute-force tour limited to {max} points, found {found}")]
    TourTooLarge { max: usize, found: usize },

    #[error("convex hull requires 2D points, found dimension {0}")]
    HullNot2D(usize),

    #[error("elbow detection needs at least 3 curve points, found {0}")]
    ElbowTooFewPoints(usize),

    #[error("invalid parameter: {0}")]
    InvalidParam(String),
}

pub type Result<T> = std::result::Result<T, Error>;
