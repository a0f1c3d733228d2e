//! Free-field data of the boundary states and the quantities built from it:
//! vacuum norms `⟨i|i⟩`, `⟨i|(-q)^D|i⟩`, the bulk–fracture overlap and the
//! fidelity curve.

mod coeffs;
mod fidelity;
mod norms;
pub mod qint;

pub use coeffs::{boson_coeffs, theta_parity, BosonCoeffs, Sector};
pub use fidelity::{eval_product, fidelity_curve, overlap_numeric, FidelityCurve, FidelityRow};
pub use norms::{
    mode_floor, norm_bracket_closed, norm_bracket_expsum, norm_product, overlap_closed,
    overlap_product, overlap_series, FreeFieldError,
};
