use fxxz_model::WeightError;
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum NumError {
    #[error("poles {a} and {b} are closer than the collision threshold")]
    PoleCollision { a: Complex64, b: Complex64 },
    #[error("residue sum did not converge within {n_max} family members (tail {tail:e})")]
    NoConvergence { n_max: usize, tail: f64 },
    #[error("|q| = {0} outside the supported range (0, 0.5]")]
    QOutOfRange(f64),
    #[error("non-finite integrand value at w = {0}")]
    NonFinite(Complex64),
    #[error(transparent)]
    Weight(#[from] WeightError),
}
