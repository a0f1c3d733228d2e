//! Bulk and boundary Boltzmann weights of the six-vertex model and the
//! magnetic-field parametrisation of the boundary.
//!
//! All infinite products are evaluated numerically with a cutoff
//! (`product_tol`): a factor `1 - x` is dropped once `|x| < product_tol`.

mod field;
pub mod numeric;
mod relations;
mod weights;

pub use field::{delta_to_q, field_map, field_map_exact, field_map_inv, h_inv, h_inv_exact, Field};
pub use numeric::{pochhammer_c, pochhammer2_c, DEFAULT_PRODUCT_TOL};
pub use relations::{relation_residuals, RelationResiduals};
pub use weights::{
    k_hat, k_matrix, kappa, phi, r_matrix, f_norm, KMatrix, KVariant, Mat, RMatrix, WeightError,
};
