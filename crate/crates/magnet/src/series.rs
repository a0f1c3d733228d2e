use fxxz_correlator::{component, g_factor, residue_identity, Component, Mode, Path};
use fxxz_exactalg::{int, QSeries, RPoly};
use fxxz_freefield::Sector;
use fxxz_qprod::{Monomial, Pochhammer, QProduct};

use crate::error::MagnetError;

fn one_minus_r() -> RPoly {
    RPoly::from_terms([(0, int(1)), (1, int(-1))])
}

fn sign(n: i32) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `-M^{(i)} = g (P_{+-} - P_{-+})` in the fractured chain.
///
/// In sector 1 the `-+` component has no separating contour and is taken
/// from the residue identity `g (P_{-+} + P_{+-}) = S`.
pub fn magnetisation_series(sector: Sector, qmax: i32) -> Result<QSeries, MagnetError> {
    let g = g_factor(qmax)?;
    let pm = &g * &component(sector, Component::PlusMinus, Mode::Fracture, Path::Product, qmax)?;
    let out = match sector {
        Sector::Zero => {
            let mp = component(sector, Component::MinusPlus, Mode::Fracture, Path::Product, qmax)?;
            &pm - &(&g * &mp)
        }
        Sector::One => {
            let s = residue_identity(sector, Mode::Fracture, Path::Product, qmax)?;
            &(&pm + &pm) - &s
        }
    };
    Ok(out.truncate(qmax))
}

/// `-M` at site 1 of the boundary chain, `g (P_{+-} - P_{-+}) = S - 2 g P_{-+}`.
pub fn boundary_magnetisation_series(qmax: i32) -> Result<QSeries, MagnetError> {
    let g = g_factor(qmax)?;
    let mp = &g * &component(Sector::Zero, Component::MinusPlus, Mode::Boundary, Path::ExpSum, qmax)?;
    let s = residue_identity(Sector::Zero, Mode::Boundary, Path::ExpSum, qmax)?;
    Ok((&s - &(&mp + &mp)).truncate(qmax))
}

/// `1 + 2(1-r) Σ_{n≥1} (-q²)^n / (1 - r q^{4n})`, summed over `(n, m)` at
/// q-order `2n(1+2m)`.
pub fn conjecture_series(qmax: i32) -> QSeries {
    let mut out = QSeries::one(qmax);
    let base = one_minus_r().scale(&int(2));
    let mut n = 1;
    while 2 * n <= qmax {
        let mut m = 0;
        while 2 * n * (1 + 2 * m) <= qmax {
            out.add_at(2 * n * (1 + 2 * m), &base.mul_term(&int(sign(n)), m));
            m += 1;
        }
        n += 1;
    }
    out
}

/// `1 + 2(1-r)² Σ_{n≥1} (-q²)^n / (1 - r q^{2n})²`.
pub fn boundary_target_series(qmax: i32) -> QSeries {
    let mut out = QSeries::one(qmax);
    let base = one_minus_r().pow(2).scale(&int(2));
    let mut n = 1;
    while 2 * n <= qmax {
        let mut m = 0;
        while 2 * n * (1 + m) <= qmax {
            out.add_at(2 * n * (1 + m), &base.mul_term(&int(sign(n) * (m as i64 + 1)), m));
            m += 1;
        }
        n += 1;
    }
    out
}

/// `(q²;q²)²_∞ / (-q²;q²)²_∞`
pub fn spontaneous_series(qmax: i32) -> Result<QSeries, MagnetError> {
    let p = QProduct::new()
        .with(Pochhammer::q_bases(Monomial::q(2), &[2]).pow(2))
        .with(Pochhammer::q_bases(Monomial::q(2).signed(-1), &[2]).pow(-2));
    Ok(p.expand(qmax)?)
}

/// First q-order where `M^{(1)}(1/r) = -M^{(0)}(r)` fails.
pub fn symmetry_mismatch(qmax: i32) -> Result<Option<i32>, MagnetError> {
    let m0 = magnetisation_series(Sector::Zero, qmax)?;
    let m1 = magnetisation_series(Sector::One, qmax)?;
    Ok(m1.invert_r().first_mismatch(&-&m0))
}
