use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GridError {
    #[error("n must be even (got {0})")]
    OddPoints(usize),
    #[error("n must be at least 4 (got {0})")]
    TooFewPoints(usize),
    #[error("dx must be positive and finite (got {0})")]
    BadSpacing(f64),
    #[error("r_max must be at least 1")]
    EmptyBasis,
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("grid mismatch: (n={n1}, dx={dx1}) vs (n={n2}, dx={dx2})")]
    GridMismatch { n1: usize, dx1: f64, n2: usize, dx2: f64 },
    #[error("array shape {got:?} does not match expected {expected:?}")]
    Shape { expected: (usize, usize), got: (usize, usize) },
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed {what}: {detail}")]
    Malformed { what: &'static str, detail: String },
    #[error(transparent)]
    Grid(#[from] GridError),
}
