//! Boundary correlation functions as exact q-series.
//!
//! A component `P_{ε_1...ε_N}` is an N/2-fold contour integral. The integrand
//! is assembled symbolically ([`build_integrand`]), its poles are split into
//! inside and outside families ([`ContourSpec`]), and the integral is read off
//! as the `Π w_a^{-1}` coefficient of a graded Laurent expansion. Two
//! expansions are available: the infinite-product form of the integrand and
//! its free-field exponential sum.

mod error;
pub mod expsum;
mod extract;
mod integrand;
mod residue;

pub use error::CorrelatorError;
pub use extract::{choose_lambda, expsum_at, extract, extract_expsum, extract_product, Extraction, Path};
pub use integrand::{
    build_integrand, classify_poles, standard_slots, ContourSpec, Factor, FactorList, Mode, Origin,
    PoleFamily, Side, Slot, ZArg,
};
pub use residue::{component, g_factor, residue_identity, substitute_w, Component};
