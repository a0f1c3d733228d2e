use std::fmt;

use fxxz_exactalg::{int, MAX_W};
use fxxz_freefield::Sector;
use fxxz_qprod::Monomial;
use serde::Serialize;

use crate::error::CorrelatorError;

/// `m · ζ^zeta`, where the spectral variables are `z = ζ²`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZArg {
    pub m: Monomial,
    pub zeta: i32,
}

impl ZArg {
    pub fn new(m: Monomial, zeta: i32) -> Self {
        Self { m, zeta }
    }

    pub fn one() -> Self {
        Self::new(Monomial::one(), 0)
    }

    /// `q^e r^k w^w z^t`
    pub fn qrwz(e: i32, k: i32, w: &[i32], t: i32) -> Self {
        Self::new(Monomial::qrw(e, k, w), 2 * t)
    }

    pub fn mul(&self, o: &ZArg) -> ZArg {
        ZArg::new(&self.m * &o.m, self.zeta + o.zeta)
    }

    pub fn pow(&self, n: i32) -> ZArg {
        ZArg::new(self.m.pow(n), self.zeta * n)
    }

    pub fn recip(&self) -> ZArg {
        self.pow(-1)
    }

    pub fn signed(&self, s: i64) -> ZArg {
        ZArg::new(self.m.clone().signed(s), self.zeta)
    }

    pub fn has_w(&self) -> bool {
        self.m.has_w()
    }

    /// The only variable this argument depends on, with its degree.
    pub fn single_w(&self) -> Option<(usize, i32)> {
        let mut found = None;
        for (a, d) in self.m.w.iter().enumerate() {
            if *d != 0 {
                if found.is_some() {
                    return None;
                }
                found = Some((a, *d));
            }
        }
        found
    }

    /// Specialise `ζ = 1`.
    pub fn at_unit_zeta(&self) -> Monomial {
        self.m.clone()
    }

    /// Numeric value at complex-free real arguments (used by tests).
    pub fn eval(&self, q: f64, r: f64, zeta: f64, w: &[f64]) -> f64 {
        use num_traits::ToPrimitive;
        let mut v = self.m.c.to_f64().unwrap_or(f64::NAN)
            * q.powf(self.m.q2 as f64 / 2.0)
            * r.powi(self.m.r)
            * zeta.powi(self.zeta);
        for (a, d) in self.m.w.iter().enumerate() {
            if *d != 0 {
                v *= w[a].powi(*d);
            }
        }
        v
    }
}

impl fmt::Display for ZArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.m)?;
        if self.zeta != 0 {
            write!(f, " zeta^{}", self.zeta)?;
        }
        Ok(())
    }
}

/// Where a factor comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Origin {
    Prefactor,
    Rational,
    Vandermonde,
    Integrand,
}

/// `(arg; q^{b_1}, ..., q^{b_N})_∞^power`; with no bases it is `(1 - arg)^power`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    pub arg: ZArg,
    pub bases: Vec<i32>,
    pub power: i32,
    pub origin: Origin,
}

impl Factor {
    fn poch(arg: ZArg, bases: &[i32], power: i32, origin: Origin) -> Self {
        Self {
            arg,
            bases: bases.to_vec(),
            power,
            origin,
        }
    }

    fn binomial(arg: ZArg, power: i32, origin: Origin) -> Self {
        Self::poch(arg, &[], power, origin)
    }

    pub fn is_binomial(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn eval(&self, q: f64, r: f64, zeta: f64, w: &[f64], tol: f64) -> f64 {
        let a = self.arg.eval(q, r, zeta, w);
        let mut v = 1.0;
        if self.bases.is_empty() {
            v = 1.0 - a;
        } else {
            fn rec(bases: &[f64], x: f64, tol: f64, v: &mut f64) {
                match bases.split_first() {
                    None => *v *= 1.0 - x,
                    Some((b, rest)) => {
                        let mut x = x;
                        let mut n = 0;
                        while x.abs() >= tol || n == 0 {
                            rec(rest, x, tol, v);
                            x *= b;
                            n += 1;
                            if x == 0.0 {
                                break;
                            }
                        }
                    }
                }
            }
            let bs: Vec<f64> = self.bases.iter().map(|e| q.powi(*e)).collect();
            rec(&bs, a, tol, &mut v);
        }
        v.powi(self.power)
    }
}

/// Spectral slot `ζ_j = sign · q^{q2/2} · ζ`, so `z_j = q^{q2} z`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Slot {
    pub sign: i8,
    pub q2: i32,
}

impl Slot {
    /// `ζ_j = -q^{-1} ζ`
    pub const SHIFTED: Slot = Slot { sign: -1, q2: -2 };
    /// `ζ_j = ζ`
    pub const PLAIN: Slot = Slot { sign: 1, q2: 0 };

    fn z(&self) -> ZArg {
        ZArg::new(Monomial::q(self.q2), 2)
    }
}

/// The specialisation used for one-site quantities on N slots: the first
/// half shifted, the second half plain.
pub fn standard_slots(n: usize) -> Vec<Slot> {
    (0..n)
        .map(|j| if j < n / 2 { Slot::SHIFTED } else { Slot::PLAIN })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mode {
    /// `⟨i|(-q)^D ...|i⟩`
    Fracture,
    /// `⟨i| ... |i⟩`
    Boundary,
}

impl Mode {
    pub fn primed(self) -> bool {
        matches!(self, Mode::Fracture)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Inside,
    Outside,
}

/// A geometric family of poles `w_var = base · q^{step n}`, `n >= 0`
/// (a single pole when `step` is `None`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleFamily {
    pub factor: usize,
    pub var: usize,
    pub base: ZArg,
    pub step: Option<i32>,
    pub side: Side,
}

#[derive(Clone, Debug, Default)]
pub struct ContourSpec {
    pub families: Vec<PoleFamily>,
}

impl ContourSpec {
    pub fn inside(&self) -> impl Iterator<Item = &PoleFamily> {
        self.families.iter().filter(|f| f.side == Side::Inside)
    }

    pub fn outside(&self) -> impl Iterator<Item = &PoleFamily> {
        self.families.iter().filter(|f| f.side == Side::Outside)
    }
}

/// The integrand of one correlation component.
///
/// The full integrand is `scalar · Π factors` with the integrand part
/// `integrand` present only in product form (fracture mode). In boundary mode
/// the integrand is only available as an exponential sum.
#[derive(Clone, Debug)]
pub struct FactorList {
    pub sector: Sector,
    pub eps: Vec<i8>,
    pub slots: Vec<Slot>,
    pub mode: Mode,
    /// 1-based positions of the `+` entries; variable `a` belongs to `positions[a]`.
    pub positions: Vec<usize>,
    pub scalar: ZArg,
    pub factors: Vec<Factor>,
    pub integrand: Vec<Factor>,
}

impl FactorList {
    pub fn nvars(&self) -> usize {
        self.positions.len()
    }

    pub fn n(&self) -> usize {
        self.eps.len()
    }

    /// All factors that take part in the product-form extraction.
    pub fn all_factors(&self) -> impl Iterator<Item = &Factor> {
        self.factors.iter().chain(self.integrand.iter())
    }
}

fn push_poch(out: &mut Vec<Factor>, arg: ZArg, bases: &[i32], power: i32) {
    out.push(Factor::poch(arg, bases, power, Origin::Integrand));
}

/// Product form of the integrand for spectral slots `zs` and `nvars` variables.
fn product_integrand(sector: Sector, zs: &[ZArg], nvars: usize) -> Vec<Factor> {
    let q = |e: i32| ZArg::new(Monomial::q(e), 0);
    let qr = |e: i32, k: i32| ZArg::new(Monomial::qr(e, k), 0);
    let w = |a: usize, d: i32| {
        let mut k = [0; MAX_W];
        k[a] = d;
        ZArg::new(Monomial::new(int(1), 0, 0, k), 0)
    };
    let mut out = Vec::new();
    for j in 0..zs.len() {
        for k in j + 1..zs.len() {
            let zz = zs[j].mul(&zs[k]);
            push_poch(&mut out, q(10).mul(&zz), &[4, 8], 1);
            push_poch(&mut out, q(12).mul(&zz), &[4, 8], -1);
            push_poch(&mut out, q(2).mul(&zz.recip()), &[4, 8], 1);
            push_poch(&mut out, q(4).mul(&zz.recip()), &[4, 8], -1);
        }
    }
    for zj in zs {
        for zk in zs {
            let ratio = zj.mul(&zk.recip());
            push_poch(&mut out, q(10).mul(&ratio), &[4, 8], 1);
            push_poch(&mut out, q(12).mul(&ratio), &[4, 8], -1);
        }
    }
    for zj in zs {
        let z2 = zj.pow(2);
        push_poch(&mut out, q(14).mul(&z2), &[8, 8], 1);
        push_poch(&mut out, q(16).mul(&z2), &[8, 8], -1);
        push_poch(&mut out, q(6).mul(&z2.recip()), &[8, 8], 1);
        push_poch(&mut out, q(8).mul(&z2.recip()), &[8, 8], -1);
    }
    for zj in zs {
        let zi = zj.recip();
        match sector {
            Sector::Zero => {
                push_poch(&mut out, qr(4, 1).mul(zj), &[4, 8], 1);
                push_poch(&mut out, qr(12, 1).mul(zj), &[4, 8], 1);
                push_poch(&mut out, qr(6, 1).mul(zj), &[4, 4], -1);
                push_poch(&mut out, qr(4, 1).mul(&zi), &[4, 8], 2);
                push_poch(&mut out, qr(2, 1).mul(&zi), &[4, 4], -1);
            }
            Sector::One => {
                push_poch(&mut out, qr(0, -1).mul(&zi), &[4, 8], 1);
                push_poch(&mut out, qr(8, -1).mul(&zi), &[4, 8], 1);
                push_poch(&mut out, qr(2, -1).mul(&zi), &[4, 4], -1);
                push_poch(&mut out, qr(8, -1).mul(zj), &[4, 8], 2);
                push_poch(&mut out, qr(6, -1).mul(zj), &[4, 4], -1);
            }
        }
    }
    for _ in 0..nvars {
        push_poch(&mut out, q(8), &[8], 1);
        push_poch(&mut out, q(10), &[8], 1);
    }
    for zj in zs {
        let zi = zj.recip();
        for a in 0..nvars {
            push_poch(&mut out, q(6).mul(zj).mul(&w(a, 1)), &[8], -1);
            push_poch(&mut out, q(4).mul(&zi).mul(&w(a, -1)), &[8], -1);
            push_poch(&mut out, q(12).mul(zj).mul(&w(a, -1)), &[8], -1);
            push_poch(&mut out, q(6).mul(&zi).mul(&w(a, 1)), &[8], -1);
        }
    }
    for a in 0..nvars {
        push_poch(&mut out, q(2).mul(&w(a, 2)), &[8], 1);
        push_poch(&mut out, q(6).mul(&w(a, -2)), &[8], 1);
    }
    for a in 0..nvars {
        for b in a + 1..nvars {
            let ww = w(a, 1).mul(&w(b, 1));
            push_poch(&mut out, q(2).mul(&ww), &[8], 1);
            push_poch(&mut out, q(4).mul(&ww), &[8], 1);
            push_poch(&mut out, q(6).mul(&ww.recip()), &[8], 1);
            push_poch(&mut out, q(8).mul(&ww.recip()), &[8], 1);
        }
    }
    for a in 0..nvars {
        for b in 0..nvars {
            if a != b {
                let ratio = w(a, 1).mul(&w(b, -1));
                push_poch(&mut out, q(8).mul(&ratio), &[8], 1);
                push_poch(&mut out, q(10).mul(&ratio), &[8], 1);
            }
        }
    }
    for a in 0..nvars {
        let (wp, wm) = (w(a, 1), w(a, -1));
        match sector {
            Sector::Zero => {
                push_poch(&mut out, qr(6, 1).mul(&wp), &[8], 1);
                push_poch(&mut out, qr(4, 1).mul(&wm), &[8], 1);
                push_poch(&mut out, qr(0, 1).mul(&wp), &[8], -1);
                push_poch(&mut out, qr(6, 1).mul(&wm), &[8], -1);
            }
            Sector::One => {
                push_poch(&mut out, qr(2, -1).mul(&wp), &[8], 1);
                push_poch(&mut out, qr(8, -1).mul(&wm), &[8], 1);
                push_poch(&mut out, qr(4, -1).mul(&wp), &[8], -1);
                push_poch(&mut out, qr(2, -1).mul(&wm), &[8], -1);
            }
        }
    }
    out
}

/// Assemble the integrand of the component `eps` (entries `±1`) at the
/// spectral slots `slots`, together with its pole classification.
pub fn build_integrand(
    sector: Sector,
    eps: &[i8],
    slots: &[Slot],
    mode: Mode,
) -> Result<(FactorList, ContourSpec), CorrelatorError> {
    let n = eps.len();
    if n == 0 || !n.is_multiple_of(2) {
        return Err(CorrelatorError::BadComponent(format!(
            "the number of slots must be even and positive, got {n}"
        )));
    }
    if slots.len() != n {
        return Err(CorrelatorError::BadComponent(format!(
            "{} spectral slots for {n} indices",
            slots.len()
        )));
    }
    if eps.iter().any(|e| *e != 1 && *e != -1) {
        return Err(CorrelatorError::BadComponent(format!("indices must be ±1: {eps:?}")));
    }
    let positions: Vec<usize> = (1..=n).filter(|j| eps[j - 1] == 1).collect();
    if positions.len() > MAX_W {
        return Err(CorrelatorError::TooManyVariables(positions.len()));
    }
    let i = sector.index() as i32;
    let nn = n as i32;
    let zs: Vec<ZArg> = slots.iter().map(Slot::z).collect();
    let w = |a: usize, d: i32| {
        let mut k = [0; MAX_W];
        k[a] = d;
        ZArg::new(Monomial::new(int(1), 0, 0, k), 0)
    };

    // (-q^3)^{N²/4 + iN/2 - Σa}
    let e1 = nn * nn / 4 + i * nn / 2 - positions.iter().map(|p| *p as i32).sum::<i32>();
    let mut scalar = ZArg::new(Monomial::q(3 * e1), 0).signed(if e1 % 2 == 0 { 1 } else { -1 });
    let mut factors = vec![Factor::binomial(
        ZArg::new(Monomial::q(2), 0),
        nn / 2,
        Origin::Prefactor,
    )];
    // Π ζ_j^{(1+ε_j)/2 - j + N + i}
    for (j, (s, e)) in slots.iter().zip(eps).enumerate() {
        let p = (1 + *e as i32) / 2 - (j as i32 + 1) + nn + i;
        let zj = ZArg::new(Monomial::q_half(s.q2), 1)
            .signed(s.sign as i64)
            .pow(p);
        scalar = scalar.mul(&zj);
    }
    for j in 0..n {
        for k in j + 1..n {
            let ratio = zs[k].mul(&zs[j].recip());
            let q = |e: i32| ZArg::new(Monomial::q(e), 0);
            factors.push(Factor::poch(q(2).mul(&ratio), &[4], 1, Origin::Prefactor));
            factors.push(Factor::poch(q(4).mul(&ratio), &[4], -1, Origin::Prefactor));
        }
    }

    for (a, &pa) in positions.iter().enumerate() {
        scalar = scalar.mul(&w(a, 1 - i));
        for b in a + 1..positions.len() {
            // (w_a - w_b)(w_a - q² w_b)
            scalar = scalar.mul(&w(a, 2));
            let ratio = w(b, 1).mul(&w(a, -1));
            factors.push(Factor::binomial(ratio.clone(), 1, Origin::Vandermonde));
            factors.push(Factor::binomial(
                ZArg::new(Monomial::q(2), 0).mul(&ratio),
                1,
                Origin::Vandermonde,
            ));
        }
        for (j, zj) in zs.iter().enumerate() {
            let pos = j + 1;
            if pos <= pa {
                // 1/(z_j - q^{-2} w_a)
                scalar = scalar.mul(&zj.recip());
                let m = ZArg::new(Monomial::q(-2), 0).mul(&zj.recip()).mul(&w(a, 1));
                factors.push(Factor::binomial(m, -1, Origin::Rational));
            }
            if pa <= pos {
                // 1/(w_a - q^4 z_j)
                scalar = scalar.mul(&w(a, -1));
                let m = ZArg::new(Monomial::q(4), 0).mul(zj).mul(&w(a, -1));
                factors.push(Factor::binomial(m, -1, Origin::Rational));
            }
        }
    }

    let integrand = match mode {
        Mode::Fracture => product_integrand(sector, &zs, positions.len()),
        Mode::Boundary => Vec::new(),
    };
    let list = FactorList {
        sector,
        eps: eps.to_vec(),
        slots: slots.to_vec(),
        mode,
        positions,
        scalar,
        factors,
        integrand,
    };
    let contour = classify_poles(&list)?;
    Ok((list, contour))
}

/// Denominators expanded in positive powers of `w` have their poles outside
/// the contour; those expanded in `1/w` have them inside.
pub fn classify_poles(list: &FactorList) -> Result<ContourSpec, CorrelatorError> {
    let mut families = Vec::new();
    for (idx, f) in list.all_factors().enumerate() {
        if f.power >= 0 || !f.arg.has_w() {
            continue;
        }
        let (var, d) = f.arg.single_w().ok_or_else(|| {
            CorrelatorError::BadComponent(format!("denominator {} couples variables", f.arg))
        })?;
        if d.abs() != 1 {
            return Err(CorrelatorError::BadComponent(format!(
                "denominator {} is not linear in w",
                f.arg
            )));
        }
        let mut coeff = f.arg.clone();
        coeff.m.w = [0; MAX_W];
        let step = match f.bases.as_slice() {
            [] => None,
            [b] => Some(*b),
            _ => {
                return Err(CorrelatorError::BadComponent(format!(
                    "denominator {} has several bases",
                    f.arg
                )))
            }
        };
        let (base, side, step) = if d > 0 {
            (coeff.recip(), Side::Outside, step.map(|s| -s))
        } else {
            (coeff, Side::Inside, step)
        };
        families.push(PoleFamily {
            factor: idx,
            var,
            base,
            step,
            side,
        });
    }
    Ok(ContourSpec { families })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n2(sector: Sector, eps: [i8; 2]) -> (FactorList, ContourSpec) {
        build_integrand(sector, &eps, &standard_slots(2), Mode::Fracture).unwrap()
    }

    #[test]
    fn rejects_odd_length() {
        assert!(build_integrand(Sector::Zero, &[1], &[Slot::PLAIN], Mode::Fracture).is_err());
    }

    #[test]
    fn one_variable_per_plus() {
        let (l, _) = n2(Sector::Zero, [-1, 1]);
        assert_eq!(l.positions, vec![2]);
        let (l, _) = n2(Sector::Zero, [1, -1]);
        assert_eq!(l.positions, vec![1]);
    }

    #[test]
    fn rational_pole_moves_inside_for_plus_minus() {
        let q2z = ZArg::qrwz(2, 0, &[], 1);
        let (_, c) = n2(Sector::Zero, [-1, 1]);
        assert!(c.outside().any(|f| f.base == q2z && f.step.is_none()));
        let (_, c) = n2(Sector::Zero, [1, -1]);
        assert!(c.inside().any(|f| f.base == q2z && f.step.is_none()));
    }
}
