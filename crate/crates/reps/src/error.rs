use phasespace::GridError;
use phasespace_symbolic::Rejection;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RepsError {
    #[error("shift {value} along {axis} is not a multiple of the grid step {step}")]
    OffLattice { axis: &'static str, value: f64, step: f64 },
    #[error("generator has no Hilbert-space factorisation: {0}")]
    Factorization(#[from] Rejection),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("{0}")]
    Param(String),
}
