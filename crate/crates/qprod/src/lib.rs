//! q-Pochhammer symbols `(a; b_1, ..., b_N)_∞` and theta functions.
//!
//! Products are held symbolically as [`Pochhammer`] records so that the same
//! description can either be expanded into a [`QSeries`] (when the argument
//! carries no `w`) or enumerated factor by factor for contour extraction.

mod monomial;
mod product;

pub use monomial::Monomial;
pub use product::{
    pochhammer, pochhammer_inverse, theta, theta_factors, Pochhammer, ProductError, QProduct,
};
