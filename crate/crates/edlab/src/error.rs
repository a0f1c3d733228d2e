use thiserror::Error;

#[derive(Debug, Error)]
pub enum EdError {
    #[error("{what} needs dimension {dim}, above the cap {cap}; use fewer sites or a total-Sz sector")]
    TooLarge { what: String, dim: usize, cap: usize },
    #[error("invalid chain: {0}")]
    Invalid(String),
    #[error("eigensolver stalled at residual {residual:e} after {iterations} iterations")]
    NoConvergence { residual: f64, iterations: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
