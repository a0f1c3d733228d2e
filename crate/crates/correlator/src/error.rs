use fxxz_exactalg::AlgebraError;
use fxxz_freefield::FreeFieldError;
use fxxz_qprod::ProductError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CorrelatorError {
    #[error("bad component: {0}")]
    BadComponent(String),
    #[error("{0} integration variables exceed the supported maximum")]
    TooManyVariables(usize),
    #[error(
        "no contour radius for w_{var} separates the inside and outside poles (need {lo}/2 < lambda < {hi}/2 in units of the q-exponent)"
    )]
    ContourNotSeparable { var: usize, lo: i64, hi: i64 },
    #[error("exponent term {0} has non-positive order and no closed form")]
    ZeroOrderExponent(String),
    #[error("zero-order factor {0} does not cancel")]
    Uncancelled(String),
    #[error("half-integer q-exponent in {0}")]
    HalfInteger(String),
    #[error("precision lost: {0}")]
    Precision(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Product(#[from] ProductError),
    #[error(transparent)]
    FreeField(#[from] FreeFieldError),
}
