//! Exact coefficient algebra for q-series computations.
//!
//! * [`RPoly`]: Laurent polynomials in `r` over the rationals.
//! * [`QSeries`]: truncated q-Laurent series with `RPoly` coefficients.
//! * [`HalfSeries`]: series in `q^{1/2}` used for half-integer exponents.
//! * [`WLaurent`]: Laurent objects in auxiliary variables `w_a` with graded
//!   truncation, used to read off contour integrals as `w^{-1}` coefficients.

mod error;
mod half;
pub mod json;
mod rpoly;
mod series;
pub mod wlaurent;

pub use error::AlgebraError;
pub use half::HalfSeries;
pub use rpoly::{int, rat, RPoly};
pub use series::{QSeries, QrTerm, TruncatedQSeries};
pub use wlaurent::{Budget, ElemOp, Grading, Profile, WKey, WLaurent, WTerm, MAX_W};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
