use fxxz_exactalg::{int, HalfSeries, QSeries, RPoly};
use serde::Serialize;

use crate::qint::qint_inv;

/// Boundary sector `i ∈ {0, 1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sector {
    Zero,
    One,
}

impl Sector {
    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            0 => Some(Sector::Zero),
            1 => Some(Sector::One),
            _ => None,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            Sector::Zero => 0,
            Sector::One => 1,
        }
    }
}

/// `θ_n = 1` for even `n`, else 0.
pub fn theta_parity(n: i32) -> bool {
    n % 2 == 0
}

/// Coefficients of `F_i`, `G_i` (or `G'_i` when `primed`) for mode `n`.
#[derive(Clone, Debug)]
pub struct BosonCoeffs {
    pub sector: Sector,
    pub n: i32,
    pub primed: bool,
    pub alpha: QSeries,
    pub gamma: QSeries,
    pub beta: HalfSeries,
    pub delta: HalfSeries,
}

/// `c q^{e2/2} r^k / [2n]` as a half-unit series.
fn over_q2n(c: i64, e2: i32, k: i32, inv2n: &QSeries) -> HalfSeries {
    HalfSeries::shifted(inv2n.scale(&RPoly::monomial(int(c), k)), e2)
}

/// `c q^{e2/2} (1 - q^n) / [2n]`
fn theta_term(c: i64, e2: i32, n: i32, inv2n: &QSeries) -> HalfSeries {
    let body = inv2n
        .mul_one_minus(&fxxz_exactalg::QrTerm::unit(n, 0))
        .scale(&RPoly::from_int(c));
    HalfSeries::shifted(body, e2)
}

pub fn boson_coeffs(sector: Sector, n: i32, primed: bool, max_order: i32) -> BosonCoeffs {
    assert!(n >= 1, "modes start at n = 1");
    let inv2n = qint_inv(2 * n, max_order);
    let th = theta_parity(n);
    let zero = HalfSeries::zero(max_order);
    let (beta_r, delta_r) = match sector {
        Sector::Zero => (
            over_q2n(-1, 7 * n, n, &inv2n),
            over_q2n(-1, -5 * n, n, &inv2n),
        ),
        Sector::One => (
            over_q2n(1, 3 * n, -n, &inv2n),
            over_q2n(1, -n, -n, &inv2n),
        ),
    };
    let (beta_t, delta_t) = if th {
        (theta_term(-1, 5 * n, n, &inv2n), theta_term(1, -3 * n, n, &inv2n))
    } else {
        (zero.clone(), zero)
    };
    let beta = &beta_t + &beta_r;
    let mut delta = &delta_t + &delta_r;
    let alpha = QSeries::monomial(RPoly::from_int(-1), 6 * n, max_order + 6 * n);
    let gamma = if primed {
        delta = delta.mul_q_half(4 * n);
        QSeries::monomial(RPoly::from_int(-1), 2 * n, max_order + 2 * n)
    } else {
        QSeries::monomial(RPoly::from_int(-1), -2 * n, max_order)
    };
    BosonCoeffs {
        sector,
        n,
        primed,
        alpha,
        gamma,
        beta,
        delta,
    }
}
