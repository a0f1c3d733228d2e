//! The integrand as an exponential of a free-field mode sum.

use std::collections::BTreeMap;

use fxxz_exactalg::wlaurent::key_add;
use fxxz_exactalg::{rat, QSeries, QrTerm, RPoly, WKey, MAX_W};
use fxxz_freefield::qint::{qint, qint_inv};
use fxxz_freefield::{boson_coeffs, Sector};

use crate::error::CorrelatorError;
use crate::integrand::Slot;

/// Laurent polynomial in `w` with series coefficients.
pub type WPoly = BTreeMap<WKey, QSeries>;

fn add_into(p: &mut WPoly, k: WKey, s: QSeries) {
    let merged = match p.remove(&k) {
        Some(prev) => &prev + &s,
        None => s,
    };
    p.insert(k, merged);
}

fn add(a: &WPoly, b: &WPoly) -> WPoly {
    let mut out = a.clone();
    for (k, s) in b {
        add_into(&mut out, *k, s.clone());
    }
    out
}

fn mul(a: &WPoly, b: &WPoly) -> WPoly {
    let mut out = WPoly::new();
    for (ka, sa) in a {
        for (kb, sb) in b {
            add_into(&mut out, key_add(ka, kb), sa * sb);
        }
    }
    out
}

fn scale(a: &WPoly, s: &QSeries) -> WPoly {
    a.iter().map(|(k, v)| (*k, v * s)).collect()
}

fn var_key(a: usize, d: i32) -> WKey {
    let mut k = [0; MAX_W];
    k[a] = d;
    k
}

/// The mode-`n` term of the exponent, computed to internal order `internal`.
pub fn mode_exponent(
    sector: Sector,
    slots: &[Slot],
    nvars: usize,
    primed: bool,
    n: i32,
    internal: i32,
) -> Result<WPoly, CorrelatorError> {
    let c = boson_coeffs(sector, n, primed, internal);
    let b = c.beta.mul_q_half(-n).into_integral()?;
    let d = c.delta.mul_q_half(-n).into_integral()?;
    let inv2n = qint_inv(2 * n, internal);
    let invn = qint_inv(n, internal);
    let zero = [0; MAX_W];

    let mut x = WPoly::new();
    let mut y = WPoly::new();
    for s in slots {
        add_into(&mut x, zero, inv2n.mul_term(&QrTerm::unit(3 * n + s.q2 * n, 0)));
        add_into(&mut y, zero, inv2n.mul_term(&QrTerm::unit(-3 * n - s.q2 * n, 0)));
    }
    for a in 0..nvars {
        add_into(&mut x, var_key(a, n), -&invn);
        add_into(&mut y, var_key(a, -n), -&invn);
    }
    let half = RPoly::constant(rat(1, 2));
    let ag = &c.alpha * &c.gamma;
    let xx = mul(&x, &x);
    let yy = mul(&y, &y);
    let xy = mul(&x, &y);
    let mut inner = scale(&xx, &c.gamma.scale(&half));
    inner = add(&inner, &scale(&xy, &-&ag));
    inner = add(&inner, &scale(&yy, &c.alpha.scale(&half)));
    inner = add(&inner, &scale(&x, &(&d + &(&c.gamma * &b))));
    inner = add(&inner, &scale(&y, &-&(&b + &(&c.alpha * &d))));

    let ag_order = if primed { 8 * n } else { 4 * n };
    let pref = (&qint(2 * n, internal) * &qint(n, internal))
        .div_one_minus(&QrTerm::unit(ag_order, 0))?
        .mul_term(&QrTerm::new(rat(1, n as i64), n, 0));
    Ok(scale(&inner, &pref)
        .into_iter()
        .filter(|(_, s)| !s.is_zero())
        .collect())
}

/// Closed form of the zero-order part of a w-free exponent.
///
/// The `q⁰` coefficient of mode `n` must be `-Σ_t a_t r^{k_t n} / n` with the
/// same `(k_t, a_t)` for every mode, which sums to `Σ_t a_t log(1 - r^{k_t})`.
#[derive(Clone, Debug, Default)]
pub struct ZeroOrderLog {
    terms: Vec<(i32, fxxz_exactalg::BigRational)>,
    seen: Vec<(i32, RPoly)>,
}

impl ZeroOrderLog {
    pub fn record(&mut self, n: i32, c0: RPoly) {
        if !c0.is_zero() {
            self.seen.push((n, c0));
        }
    }

    /// The factor `Π (1 - r^{k_t})^{a_t}`, after checking every recorded mode.
    pub fn factor(&mut self) -> Result<RPoly, CorrelatorError> {
        let Some((n1, c1)) = self.seen.first().cloned() else {
            return Ok(RPoly::one());
        };
        if n1 != 1 {
            return Err(CorrelatorError::ZeroOrderExponent(format!(
                "mode {n1} has q^0 term {c1} but mode 1 has none"
            )));
        }
        self.terms = c1.terms().map(|(k, c)| (k, -c.clone())).collect();
        for (n, c) in &self.seen {
            let mut want = RPoly::zero();
            for (k, a) in &self.terms {
                want.add_term(k * n, &(-a / fxxz_exactalg::BigRational::from_integer((*n).into())));
            }
            if &want != c {
                return Err(CorrelatorError::ZeroOrderExponent(format!(
                    "mode {n}: q^0 term {c} is not {want}"
                )));
            }
        }
        let mut out = RPoly::one();
        for (k, a) in &self.terms {
            if !a.is_integer() || a < &fxxz_exactalg::BigRational::from_integer(0.into()) {
                return Err(CorrelatorError::ZeroOrderExponent(format!(
                    "(1 - r^{k})^{a} is not a Laurent polynomial"
                )));
            }
            let base = RPoly::from_terms([(0, rat(1, 1)), (*k, rat(-1, 1))]);
            let p: u32 = a.to_integer().try_into().expect("small exponent");
            out = &out * &base.pow(p);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrand::standard_slots;

    #[test]
    fn exponent_is_symmetric_in_variables() {
        let slots = standard_slots(4);
        let e = mode_exponent(Sector::Zero, &slots, 2, true, 1, 20).unwrap();
        for (k, s) in &e {
            let swapped = [k[1], k[0], k[2], k[3]];
            assert_eq!(e.get(&swapped), Some(s), "key {k:?}");
        }
    }

    #[test]
    fn zero_order_log_detects_pattern() {
        let mut z = ZeroOrderLog::default();
        for n in 1..5 {
            let mut c = RPoly::zero();
            c.add_term(-n, &rat(-2, n as i64));
            z.record(n, c);
        }
        let f = z.factor().unwrap();
        let base = RPoly::from_terms([(0, rat(1, 1)), (-1, rat(-1, 1))]);
        assert_eq!(f, base.pow(2));
    }
}
