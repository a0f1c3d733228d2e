//! Site-1 magnetisation of the fractured chain and of the boundary chain.
//!
//! Series are returned as `-M`, so that the constant term is 1.

mod error;
mod fig10;
mod report;
mod series;

pub use error::MagnetError;
pub use fig10::{fig10_data, Fig10, Fig10Row};
pub use report::{boundary_mag_regression, magnetisation_report, MagReport, SpecialCase};
pub use series::{
    boundary_magnetisation_series, boundary_target_series, conjecture_series,
    magnetisation_series, spontaneous_series, symmetry_mismatch,
};
