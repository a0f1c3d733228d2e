use fxxz_freefield::Sector;
use fxxz_model::{delta_to_q, field_map_inv, pochhammer_c, Field, DEFAULT_PRODUCT_TOL};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::MagnetError;
use crate::series::{boundary_magnetisation_series, magnetisation_series};

#[derive(Clone, Debug, Serialize)]
pub struct Fig10Row {
    pub h: f64,
    pub r: f64,
    pub fracture_mag: f64,
    pub boundary_mag: f64,
    pub spontaneous_mag: f64,
    /// Truncation bound shared by the two series columns.
    pub tail_bound: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Fig10 {
    pub delta: f64,
    pub q: f64,
    pub h_inv: f64,
    pub order: i32,
    pub rows: Vec<Fig10Row>,
}

impl Fig10 {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("h,fracture_mag,boundary_mag,spontaneous_mag,tail_bound\n");
        for row in &self.rows {
            let h = if row.h.is_infinite() { "inf".to_string() } else { row.h.to_string() };
            out.push_str(&format!(
                "{h},{:.15e},{:.15e},{:.15e},{:.3e}\n",
                row.fracture_mag, row.boundary_mag, row.spontaneous_mag, row.tail_bound
            ));
        }
        out
    }
}

fn spontaneous(q: f64) -> f64 {
    let q2 = Complex64::new(q * q, 0.0);
    let num = pochhammer_c(q2, q2, DEFAULT_PRODUCT_TOL);
    let den = pochhammer_c(-q2, q2, DEFAULT_PRODUCT_TOL);
    -(num / den).norm_sqr()
}

/// Magnetisation at site 1 against the field `h ≥ 0`; `h = ∞` is allowed and
/// lands on `r = 1`.
pub fn fig10_data(delta: f64, h_grid: &[f64], order: i32) -> Result<Fig10, MagnetError> {
    if !(delta < -1.0) {
        return Err(MagnetError::Input(format!("Δ = {delta} is not below -1")));
    }
    if let Some(h) = h_grid.iter().find(|h| !(**h >= 0.0)) {
        return Err(MagnetError::Input(format!("negative or undefined field {h}")));
    }
    let q = delta_to_q(delta);
    let fracture = magnetisation_series(Sector::Zero, order)?;
    let boundary = boundary_magnetisation_series(order)?;
    let spont = spontaneous(q);
    let rows = h_grid
        .iter()
        .map(|&h| {
            let field = if h.is_infinite() { Field::Infinite } else { Field::Finite(h) };
            let r = field_map_inv(q, field);
            let (f, ft) = fracture.eval(q, r);
            let (b, bt) = boundary.eval(q, r);
            Fig10Row {
                h,
                r,
                fracture_mag: -f,
                boundary_mag: -b,
                spontaneous_mag: spont,
                tail_bound: ft.max(bt),
            }
        })
        .collect();
    Ok(Fig10 { delta, q, h_inv: fxxz_model::h_inv(q), order, rows })
}
