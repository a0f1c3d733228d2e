//! Numeric evaluation of the two-point function `P^{(i)}(ζ₁, ζ₂)` at generic
//! complex parameters by summing residues over the enclosed pole families,
//! and the boundary qKZ and exchange residuals built on it.

mod error;
pub mod logprod;
mod poles;
mod qkz;
mod residue;

pub use error::NumError;
pub use poles::{pole_families, PoleFamily, PoleKind, Side};
pub use qkz::{exchange_residual, p_vector, qkz_residual, QkzReport};
pub use residue::{eval_p_numeric, g_numeric, ResidueOptions};
