use fxxz_correlator::CorrelatorError;
use fxxz_exactalg::AlgebraError;
use fxxz_qprod::ProductError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MagnetError {
    #[error(transparent)]
    Correlator(#[from] CorrelatorError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error("residue identity gives {0} instead of 1")]
    Residue(String),
    #[error("invalid input: {0}")]
    Input(String),
}
