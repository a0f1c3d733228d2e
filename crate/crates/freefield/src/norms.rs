use fxxz_exactalg::{int, AlgebraError, HalfSeries, QSeries, QrTerm, RPoly};
use fxxz_qprod::{Monomial, Pochhammer, ProductError, QProduct};
use thiserror::Error;

use crate::coeffs::{boson_coeffs, theta_parity, Sector};
use crate::qint::qint;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FreeFieldError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Product(#[from] ProductError),
}

/// Lower bound (in whole powers of q) on the valuation of the mode-`n` term
/// of the norm exponent. Affine in `n` on each parity class.
pub fn mode_floor(sector: Sector, n: i32, primed: bool) -> i32 {
    // valuations in half units
    let inv2n = 2 * (2 * n - 1);
    let q2nqn = 2 * (2 - 3 * n);
    let th = theta_parity(n);
    let mut beta = match sector {
        Sector::Zero => 7 * n + inv2n,
        Sector::One => 3 * n + inv2n,
    };
    let mut delta = match sector {
        Sector::Zero => -5 * n + inv2n,
        Sector::One => -n + inv2n,
    };
    if th {
        beta = beta.min(5 * n + inv2n);
        delta = delta.min(-3 * n + inv2n);
    }
    let (gamma, shift) = if primed { (4 * n, 4 * n) } else { (-4 * n, 0) };
    delta += shift;
    let alpha = 12 * n;
    let inner = (gamma + 2 * beta).min(delta + beta).min(2 * delta + alpha);
    let half = q2nqn + inner;
    half.div_euclid(2) + (half.rem_euclid(2) != 0) as i32
}

/// `[2n][n]/(n(1 - α_n γ_n)) · ½(γ β² + 2δβ + δ²α)` for one mode.
fn mode_term(sector: Sector, n: i32, primed: bool, qmax: i32) -> Result<QSeries, FreeFieldError> {
    let internal = qmax + 8 * n + 10;
    let c = boson_coeffs(sector, n, primed, internal);
    let gamma = HalfSeries::integral(c.gamma.clone());
    let alpha = HalfSeries::integral(c.alpha.clone());
    let bb = &c.beta * &c.beta;
    let db = &c.delta * &c.beta;
    let dd = &c.delta * &c.delta;
    let sum = &(&(&gamma * &bb) + &(&db + &db)) + &(&dd * &alpha);
    let inner = sum.into_integral()?;
    let ag = if primed { 8 * n } else { 4 * n };
    let pref = (&qint(2 * n, internal) * &qint(n, internal))
        .div_one_minus(&QrTerm::unit(ag, 0))?
        .scale_rational(&fxxz_exactalg::rat(1, 2 * n as i64));
    let t = (&pref * &inner).truncate(qmax);
    assert!(
        t.max_order() >= qmax,
        "mode {n} lost precision: {} < {qmax}",
        t.max_order()
    );
    Ok(t)
}

/// The norm exponent with `-½ Σ log(1 - α_m γ_m)` folded in.
fn norm_exponent(sector: Sector, primed: bool, qmax: i32) -> Result<QSeries, FreeFieldError> {
    let mut e = QSeries::zero(qmax);
    let mut n = 1;
    loop {
        if mode_floor(sector, n, primed) > qmax && mode_floor(sector, n + 1, primed) > qmax {
            break;
        }
        e = &e + &mode_term(sector, n, primed, qmax)?;
        n += 1;
    }
    let step = if primed { 8 } else { 4 };
    for m in 1.. {
        if step * m > qmax {
            break;
        }
        for k in 1.. {
            let ord = step * m * k;
            if ord > qmax {
                break;
            }
            e.add_at(ord, &RPoly::constant(fxxz_exactalg::rat(1, 2 * k as i64)));
        }
    }
    Ok(e)
}

/// `⟨i|(-q)^D|i⟩` (`primed`) or `⟨i|i⟩` from the free-field exponential sum.
pub fn norm_bracket_expsum(sector: Sector, primed: bool, qmax: i32) -> Result<QSeries, FreeFieldError> {
    Ok(norm_exponent(sector, primed, qmax)?.exp()?)
}

/// Closed product forms of the same brackets.
pub fn norm_product(sector: Sector, primed: bool) -> QProduct {
    let p = |e: i32, k: i32, bases: &[i32]| Pochhammer::q_bases(Monomial::qr(e, k), bases);
    let prod = if primed {
        QProduct::new()
            .with(p(10, 2, &[8, 8]).pow(2))
            .with(p(12, 2, &[8, 8]).pow(-2))
            .with(p(6, 2, &[4, 8]))
            .with(p(4, 2, &[4, 8]).inverse())
            .with(p(14, 0, &[8, 8]))
            .with(p(10, 0, &[8, 8]).inverse())
    } else {
        QProduct::new()
            .with(p(4, 2, &[8]))
            .with(p(2, 2, &[8]).inverse())
            .with(p(6, 0, &[8]).inverse())
    };
    match sector {
        Sector::Zero => prod,
        Sector::One => prod.invert_r(),
    }
}

pub fn norm_bracket_closed(sector: Sector, primed: bool, qmax: i32) -> Result<QSeries, FreeFieldError> {
    Ok(norm_product(sector, primed).expand(qmax)?)
}

/// The closed overlap product without its `(q²;q⁴)^{1/2}` factor.
pub fn overlap_product(sector: Sector) -> QProduct {
    let p = |e: i32, k: i32, bases: &[i32]| Pochhammer::q_bases(Monomial::qr(e, k), bases);
    let prod = QProduct::new()
        .with(p(10, 2, &[8, 8]).pow(2))
        .with(p(4, 2, &[8, 8]).inverse())
        .with(p(12, 2, &[8, 8]).inverse())
        .with(p(2, 2, &[4, 8]))
        .with(p(4, 2, &[4, 8]).inverse())
        .with(p(6, 0, &[8, 8]))
        .with(p(10, 0, &[8, 8]).inverse());
    match sector {
        Sector::Zero => prod,
        Sector::One => prod.invert_r(),
    }
}

fn chi_inv_sqrt(qmax: i32) -> Result<QSeries, FreeFieldError> {
    Ok(Pochhammer::q_bases(Monomial::q(2), &[4]).expand(qmax)?.sqrt()?)
}

/// `(q²;q⁴)^{1/2} ⟨i|(-q)^D|i⟩ / ⟨i|i⟩` from the exponential sums.
pub fn overlap_series(sector: Sector, qmax: i32) -> Result<QSeries, FreeFieldError> {
    let primed = norm_bracket_expsum(sector, true, qmax)?;
    let plain = norm_bracket_expsum(sector, false, qmax)?;
    Ok(&(&chi_inv_sqrt(qmax)? * &primed) * &plain.reciprocal()?)
}

pub fn overlap_closed(sector: Sector, qmax: i32) -> Result<QSeries, FreeFieldError> {
    Ok(&chi_inv_sqrt(qmax)? * &overlap_product(sector).expand(qmax)?)
}

#[allow(dead_code)]
fn unit(c: i64) -> RPoly {
    RPoly::constant(int(c))
}
