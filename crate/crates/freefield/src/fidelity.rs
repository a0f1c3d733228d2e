use fxxz_model::{delta_to_q, field_map_inv, h_inv, Field};
use fxxz_qprod::QProduct;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::coeffs::Sector;
use crate::norms::overlap_product;

/// Numeric value of a symbolic product at real `(q, r)`; factors with
/// `|m| < tol` are dropped.
pub fn eval_product(p: &QProduct, q: f64, r: f64, tol: f64) -> f64 {
    let mut acc = 1.0;
    for f in &p.factors {
        let mut v = 1.0;
        let value = |m: &fxxz_qprod::Monomial| {
            let e = m.q_exp().expect("integral q-exponent");
            m.c.to_f64().unwrap_or(f64::NAN) * q.powi(e) * r.powi(m.r)
        };
        f.for_each_factor(|m| value(m).abs() >= tol, |m| v *= 1.0 - value(&m));
        acc *= v.powi(f.power);
    }
    acc
}

/// `(q²;q⁴)^{1/2} ⟨i|(-q)^D|i⟩/⟨i|i⟩` evaluated numerically.
pub fn overlap_numeric(sector: Sector, q: f64, r: f64, tol: f64) -> f64 {
    let chi = eval_product(
        &QProduct::new().with(fxxz_qprod::Pochhammer::q_bases(fxxz_qprod::Monomial::q(2), &[4])),
        q,
        r,
        tol,
    );
    chi.sqrt() * eval_product(&overlap_product(sector), q, r, tol)
}

#[derive(Clone, Debug, Serialize)]
pub struct FidelityRow {
    pub h: f64,
    pub r: f64,
    pub fidelity: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FidelityCurve {
    pub delta: f64,
    pub q: f64,
    pub h_inv: f64,
    pub rows: Vec<FidelityRow>,
}

impl FidelityCurve {
    pub fn to_csv(&self) -> String {
        let mut s = String::from("h,r,fidelity\n");
        for row in &self.rows {
            s.push_str(&format!("{},{},{:.15e}\n", row.h, row.r, row.fidelity));
        }
        s
    }

    /// Grid point with the largest fidelity.
    pub fn argmax(&self) -> Option<&FidelityRow> {
        self.rows
            .iter()
            .max_by(|a, b| a.fidelity.total_cmp(&b.fidelity))
    }
}

/// Fidelity `|⟨vac|vac'⟩|²` of the i = 0 sector on a grid of fields.
/// An infinite `h` maps to `r = 1`.
pub fn fidelity_curve(delta: f64, h_grid: &[f64], tol: f64) -> FidelityCurve {
    let q = delta_to_q(delta);
    let rows = h_grid
        .iter()
        .map(|&h| {
            let field = if h.is_infinite() {
                Field::Infinite
            } else {
                Field::Finite(h)
            };
            let r = field_map_inv(q, field);
            let o = overlap_numeric(Sector::Zero, q, r, tol);
            FidelityRow {
                h,
                r,
                fidelity: o * o,
            }
        })
        .collect();
    FidelityCurve {
        delta,
        q,
        h_inv: h_inv(q),
        rows,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maximum_sits_at_h_inv() {
        let q = delta_to_q(-2.0);
        let hi = h_inv(q);
        let grid: Vec<f64> = (0..=40).map(|k| k as f64 * 0.1).collect();
        let c = fidelity_curve(-2.0, &grid, 1e-17);
        let best = c.argmax().unwrap();
        let nearest = grid
            .iter()
            .copied()
            .min_by(|a, b| (a - hi).abs().total_cmp(&(b - hi).abs()))
            .unwrap();
        assert_eq!(best.h, nearest);
    }

    #[test]
    fn field_inversion_symmetry() {
        let q = delta_to_q(-2.0);
        let hi = h_inv(q);
        for h in [0.3, 0.5, 1.2, 2.5, 7.0] {
            let a = fidelity_curve(-2.0, &[h, hi * hi / h], 1e-17);
            assert!((a.rows[0].fidelity - a.rows[1].fidelity).abs() < 1e-10);
        }
    }

    #[test]
    fn larger_anisotropy_is_more_faithful() {
        let grid = [0.0, 0.5, 1.0, 2.0, 5.0, 10.0];
        let a = fidelity_curve(-2.0, &grid, 1e-17);
        let b = fidelity_curve(-4.0, &grid, 1e-17);
        for (x, y) in a.rows.iter().zip(&b.rows) {
            assert!(y.fidelity > x.fidelity, "h={}", x.h);
        }
    }
}
