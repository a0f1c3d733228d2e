//! Component evaluation helpers and the residue identity
//! `g (P_{-+} + P_{+-}) = I'(w = q² z)` at `z = 1`.

use std::collections::BTreeMap;

use fxxz_exactalg::{BigRational, QSeries, RPoly, MAX_W};
use fxxz_freefield::Sector;
use fxxz_qprod::{Monomial, Pochhammer, ProductError, QProduct};
use serde::Serialize;

use crate::error::CorrelatorError;
use crate::extract::{expsum_at, extract, Path};
use crate::integrand::{build_integrand, standard_slots, Factor, Mode};

/// `g = (q²;q⁴)_∞ / (q⁴;q⁴)_∞`
pub fn g_factor(qmax: i32) -> Result<QSeries, CorrelatorError> {
    Ok(QProduct::new()
        .with(Pochhammer::q_bases(Monomial::q(2), &[4]))
        .with(Pochhammer::q_bases(Monomial::q(4), &[4]).inverse())
        .expand(qmax)?)
}

/// Two-slot component at the standard specialisation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Component {
    MinusPlus,
    PlusMinus,
}

impl Component {
    pub fn eps(self) -> [i8; 2] {
        match self {
            Component::MinusPlus => [-1, 1],
            Component::PlusMinus => [1, -1],
        }
    }
}

/// `P^{(i)}_{ε₁ε₂}(-q^{-1}, 1)` to `q^{qmax}`.
pub fn component(
    sector: Sector,
    comp: Component,
    mode: Mode,
    path: Path,
    qmax: i32,
) -> Result<QSeries, CorrelatorError> {
    let (list, _) = build_integrand(sector, &comp.eps(), &standard_slots(2), mode)?;
    Ok(extract(&list, path, qmax)?.series)
}

/// Expand a product of factors after substituting `w_a = q^{subst_a}` at
/// `ζ = 1`. Zero-order factors `(1 - c r^k)` are collected and must cancel
/// between numerator and denominator.
pub fn substitute_w(factors: &[&Factor], subst: &[i32], qmax: i32) -> Result<QSeries, CorrelatorError> {
    let mut prod = QProduct::new();
    let mut zero: BTreeMap<(i32, BigRational), i32> = BTreeMap::new();
    for f in factors {
        let m = f.arg.at_unit_zeta();
        let shift: i32 = (0..MAX_W).map(|a| 2 * subst.get(a).copied().unwrap_or(0) * m.w[a]).sum();
        let m = Monomial::new(m.c.clone(), m.q2 + shift, m.r, [0; MAX_W]);
        if m.q2 < 0 {
            return Err(ProductError::NegativeArgument(m.to_string()).into());
        }
        if m.q2 > 0 {
            let bases: Vec<Monomial> = f.bases.iter().map(|b| Monomial::q(*b)).collect();
            prod.push(Pochhammer::new(m, &bases)?.pow(f.power));
            continue;
        }
        *zero.entry((m.r, m.c.clone())).or_default() += f.power;
        // the lattice without its origin: Π_i (m b_i; b_1..b_i)
        for i in 0..f.bases.len() {
            let bases: Vec<Monomial> = f.bases[..=i].iter().map(|b| Monomial::q(*b)).collect();
            let arg = &m * &Monomial::q(f.bases[i]);
            prod.push(Pochhammer::new(arg, &bases)?.pow(f.power));
        }
    }
    let mut series = prod.expand(qmax)?;
    for ((k, c), p) in zero {
        if p < 0 {
            return Err(CorrelatorError::Uncancelled(format!("(1 - ({c}) r^{k})^{p}")));
        }
        if p > 0 {
            let mut b = RPoly::one();
            b.add_term(k, &-c);
            series = series.scale(&b.pow(p as u32));
        }
    }
    Ok(series)
}

/// `I'(w = q²)` at the standard two-slot specialisation, which equals
/// `g (P_{-+} + P_{+-})`.
pub fn residue_identity(sector: Sector, mode: Mode, path: Path, qmax: i32) -> Result<QSeries, CorrelatorError> {
    let (list, _) = build_integrand(sector, &[-1, 1], &standard_slots(2), mode)?;
    match path {
        Path::Product => {
            if list.integrand.is_empty() {
                return Err(CorrelatorError::BadComponent(
                    "no product form of the integrand in this mode".into(),
                ));
            }
            let fs: Vec<&Factor> = list.integrand.iter().collect();
            substitute_w(&fs, &[2], qmax)
        }
        Path::ExpSum => expsum_at(&list, &[2], qmax),
    }
}
