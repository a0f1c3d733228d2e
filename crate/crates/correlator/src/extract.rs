//! Exact extraction of a contour integral as the `Π w_a^{-1}` coefficient.

use std::collections::BTreeMap;

use fxxz_exactalg::{
    int, Budget, ElemOp, Grading, QSeries, QrTerm, RPoly, WKey, WLaurent, WTerm, MAX_W,
};
use fxxz_qprod::{Monomial, Pochhammer, QProduct};
use serde::Serialize;

use crate::error::CorrelatorError;
use crate::expsum::{mode_exponent, ZeroOrderLog};
use crate::integrand::{Factor, FactorList};

/// Which representation of the integrand to expand.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Path {
    Product,
    ExpSum,
}

/// An extracted component together with the contour that was used.
#[derive(Clone, Debug)]
pub struct Extraction {
    pub series: QSeries,
    /// Twice the contour radius exponent of each variable.
    pub lambda2: Vec<i32>,
}

fn grade(lambda2: &WKey, m: &Monomial) -> i64 {
    let mut g = m.q2 as i64;
    for a in 0..MAX_W {
        g += lambda2[a] as i64 * m.w[a] as i64;
    }
    g
}

fn wterm(m: &Monomial) -> Result<WTerm, CorrelatorError> {
    m.to_wterm()
        .ok_or_else(|| CorrelatorError::HalfInteger(m.to_string()))
}

/// Pick integer `λ2_a` strictly inside the window allowed by every
/// denominator `(1 - m)`: each needs positive grade.
pub fn choose_lambda(nvars: usize, denominators: &[Monomial]) -> Result<WKey, CorrelatorError> {
    let mut out = [0; MAX_W];
    for (a, slot) in out.iter_mut().enumerate().take(nvars) {
        let mut lo = i64::MIN;
        let mut hi = i64::MAX;
        for m in denominators {
            let d = m.w[a] as i64;
            if d == 0 || m.w.iter().enumerate().any(|(b, e)| b != a && *e != 0) {
                continue;
            }
            let q2 = m.q2 as i64;
            if d > 0 {
                // λ > -q2/d
                lo = lo.max((-q2).div_euclid(d) + 1);
            } else {
                // λ < q2/|d|
                let e = -d;
                let c = q2.div_euclid(e) + (q2.rem_euclid(e) != 0) as i64;
                hi = hi.min(c - 1);
            }
        }
        if lo > hi {
            return Err(CorrelatorError::ContourNotSeparable {
                var: a + 1,
                lo: lo - 1,
                hi: hi + 1,
            });
        }
        *slot = match (lo == i64::MIN, hi == i64::MAX) {
            (true, true) => 0,
            (true, false) => hi,
            (false, true) => lo,
            (false, false) => (lo + hi).div_euclid(2),
        } as i32;
    }
    Ok(out)
}

/// Elementary factors of the w-dependent part, flipped where the grade is
/// negative. Returns the monomial collected from the flips.
fn elementary_ops(
    factors: &[&Factor],
    lambda2: &WKey,
    ceiling: i64,
) -> Result<(Monomial, Vec<ElemOp>, Vec<ElemOp>), CorrelatorError> {
    let mut flips = Monomial::one();
    let mut muls = Vec::new();
    let mut divs = Vec::new();
    for f in factors {
        let bases: Vec<Monomial> = f.bases.iter().map(|b| Monomial::q(*b)).collect();
        let p = Pochhammer::new(f.arg.at_unit_zeta(), &bases)?;
        let mut err = None;
        p.for_each_factor(
            |m| grade(lambda2, m) <= ceiling.max(-1),
            |m| {
                let g = grade(lambda2, &m);
                let reps = f.power.unsigned_abs();
                if f.power > 0 {
                    if g < 0 {
                        flips = &flips * &m.clone().signed(-1).pow(f.power);
                        for _ in 0..reps {
                            match wterm(&m.recip()) {
                                Ok(t) => muls.push(ElemOp::Mul(t)),
                                Err(e) => err = Some(e),
                            }
                        }
                    } else {
                        for _ in 0..reps {
                            match wterm(&m) {
                                Ok(t) => muls.push(ElemOp::Mul(t)),
                                Err(e) => err = Some(e),
                            }
                        }
                    }
                } else if g <= 0 {
                    err = Some(CorrelatorError::BadComponent(format!(
                        "denominator (1 - {m}) has non-positive grade {g}"
                    )));
                } else {
                    for _ in 0..reps {
                        match wterm(&m) {
                            Ok(t) => divs.push(ElemOp::Div(t)),
                            Err(e) => err = Some(e),
                        }
                    }
                }
            },
        );
        if let Some(e) = err {
            return Err(e);
        }
    }
    Ok((flips, muls, divs))
}

/// `(1 - m)` factors from `ops` with grade above the ceiling contribute only
/// dropped terms.
fn within(ops: Vec<ElemOp>, lambda2: &WKey, ceiling: i64) -> Vec<ElemOp> {
    let g = Grading {
        lambda2: *lambda2,
        ceiling,
    };
    ops.into_iter()
        .filter(|op| g.term_grade(op.term()) <= ceiling)
        .collect()
}

fn w_free_product(factors: &[&Factor]) -> Result<QProduct, CorrelatorError> {
    let mut p = QProduct::new();
    for f in factors {
        let bases: Vec<Monomial> = f.bases.iter().map(|b| Monomial::q(*b)).collect();
        p.push(Pochhammer::new(f.arg.at_unit_zeta(), &bases)?.pow(f.power));
    }
    Ok(p)
}

struct Frame {
    nvars: usize,
    lambda2: WKey,
    scalar: Monomial,
    target: WKey,
    /// Lower bound on the valuation of the extracted coefficient.
    v_f: i32,
    /// Order to which the integral times the w-free part must be known.
    order: i32,
}

fn frame(
    list: &FactorList,
    lambda2: WKey,
    w_factors: &[&Factor],
    qmax: i32,
) -> Result<Frame, CorrelatorError> {
    let nvars = list.nvars();
    let (flips, _, _) = elementary_ops(w_factors, &lambda2, -1)?;
    let scalar = &list.scalar.at_unit_zeta() * &flips;
    let mut target = [0; MAX_W];
    for (a, t) in target.iter_mut().enumerate().take(nvars) {
        *t = -1 - scalar.w[a];
    }
    let lt: i64 = (0..MAX_W).map(|a| lambda2[a] as i64 * target[a] as i64).sum();
    let v_f = (-lt).div_euclid(2) + ((-lt).rem_euclid(2) != 0) as i64;
    let e_s = scalar
        .q_exp()
        .ok_or_else(|| CorrelatorError::HalfInteger(scalar.to_string()))?;
    Ok(Frame {
        nvars,
        lambda2,
        scalar,
        target,
        v_f: v_f as i32,
        order: qmax - e_s,
    })
}

impl Frame {
    fn lambda_dot_target(&self) -> i64 {
        (0..MAX_W)
            .map(|a| self.lambda2[a] as i64 * self.target[a] as i64)
            .sum()
    }

    fn ceiling(&self, w_free: &QSeries) -> i64 {
        let v_w = if w_free.is_zero() {
            self.order
        } else {
            w_free.min_order()
        };
        2 * (self.order - v_w) as i64 + self.lambda_dot_target()
    }

    fn budget(&self, ceiling: i64) -> Budget {
        Budget::new(
            Grading {
                lambda2: self.lambda2,
                ceiling,
            },
            self.target,
        )
    }

    fn finish(&self, w_free: &QSeries, f: &QSeries, qmax: i32) -> Result<QSeries, CorrelatorError> {
        let s = &self.scalar;
        let t = QrTerm::new(s.c.clone(), s.q_exp().expect("checked"), s.r);
        let out = (w_free * f).mul_term(&t);
        if out.max_order() < qmax {
            return Err(CorrelatorError::Precision(format!(
                "result known to q^{} < q^{qmax}",
                out.max_order()
            )));
        }
        Ok(out.truncate(qmax).finalize()?)
    }
}

fn split<'a>(factors: impl Iterator<Item = &'a Factor>) -> (Vec<&'a Factor>, Vec<&'a Factor>) {
    factors.partition(|f| f.arg.has_w())
}

fn denominators(factors: &[&Factor]) -> Vec<Monomial> {
    factors
        .iter()
        .filter(|f| f.power < 0)
        .map(|f| f.arg.at_unit_zeta())
        .collect()
}

/// Expand the product form of the integrand and read off the component to
/// `q^{qmax}` (fracture mode only).
pub fn extract_product(list: &FactorList, qmax: i32) -> Result<Extraction, CorrelatorError> {
    if list.integrand.is_empty() && list.nvars() > 0 {
        return Err(CorrelatorError::BadComponent(
            "no product form of the integrand in this mode".into(),
        ));
    }
    let (w_dep, w_free) = split(list.all_factors());
    let lambda2 = choose_lambda(list.nvars(), &denominators(&w_dep))?;
    let fr = frame(list, lambda2, &w_dep, qmax)?;
    let w = w_free_product(&w_free)?.expand(fr.order - fr.v_f)?;
    let ceiling = fr.ceiling(&w);
    let f = if fr.nvars == 0 {
        QSeries::one(fr.order)
    } else {
        let (_, muls, divs) = elementary_ops(&w_dep, &lambda2, ceiling)?;
        let mut ops = within(muls, &lambda2, ceiling);
        ops.extend(within(divs, &lambda2, ceiling));
        let mut acc = WLaurent::one(fr.nvars, fr.budget(ceiling));
        acc.apply_ops(&ops)?;
        acc.extract(&fr.target)?
    };
    Ok(Extraction {
        series: fr.finish(&w, &f, qmax)?,
        lambda2: lambda2[..fr.nvars].to_vec(),
    })
}

/// The exponent split into its w-free part (with the closed zero-order
/// factor) and its w-dependent terms up to a grade ceiling.
struct Exponent {
    flat: QSeries,
    zero_order: RPoly,
    terms: BTreeMap<WKey, QSeries>,
}

/// Sum the exponent over modes. `flat_order` is the order needed for the
/// w-free part; w-dependent terms are kept up to grade `ceiling`. `subst`
/// replaces `w_a` by `q^{subst_a}` first, making everything w-free.
fn sum_exponent(
    list: &FactorList,
    lambda2: &WKey,
    flat_order: i32,
    ceiling: i64,
    subst: Option<&[i32]>,
) -> Result<Exponent, CorrelatorError> {
    let zero = [0; MAX_W];
    let nvars = list.nvars();
    let g = Grading {
        lambda2: *lambda2,
        ceiling,
    };
    let mut flat = QSeries::zero(flat_order);
    let mut zero_log = ZeroOrderLog::default();
    let mut terms: BTreeMap<WKey, QSeries> = BTreeMap::new();
    let mut idle = 0;
    let top_w = if subst.is_some() { 0 } else { (ceiling.max(0) / 2) as i32 };
    let mut n = 1;
    while idle < 3 {
        if n > 8 * (flat_order.max(top_w) + 8) {
            return Err(CorrelatorError::Precision("mode sum does not terminate".into()));
        }
        let internal = flat_order.max(top_w) + 10 * n + 20;
        let mut e = mode_exponent(list.sector, &list.slots, nvars, list.mode.primed(), n, internal)?;
        if let Some(s) = subst {
            let mut collapsed = QSeries::zero(internal);
            let mut lowest = internal;
            for (k, v) in &e {
                let shift: i32 = (0..nvars).map(|a| s[a] * k[a]).sum();
                lowest = lowest.min(v.max_order() + shift);
                collapsed = &collapsed + &v.mul_term(&QrTerm::unit(shift, 0));
            }
            let collapsed = collapsed.truncate(lowest);
            e = BTreeMap::from([(zero, collapsed)]);
        }
        let mut active = false;
        for (k, v) in e {
            if k == zero {
                if v.max_order() < flat_order {
                    return Err(CorrelatorError::Precision(format!(
                        "mode {n}: w-free exponent known to q^{} < q^{flat_order}",
                        v.max_order()
                    )));
                }
                let mut rest = QSeries::zero(flat_order);
                for (o, c) in v.iter() {
                    if o < 0 {
                        return Err(CorrelatorError::ZeroOrderExponent(format!(
                            "mode {n}: {c} q^{o}"
                        )));
                    } else if o == 0 {
                        zero_log.record(n, c.clone());
                    } else if o <= flat_order {
                        active = true;
                        rest.add_at(o, c);
                    }
                }
                flat = &flat + &rest;
            } else {
                let cap = ((ceiling - g.grade(0, &k)).div_euclid(2)) as i32;
                let mut kept = QSeries::zero(cap);
                for (o, c) in v.iter() {
                    let gr = g.grade(o, &k);
                    if gr <= 0 {
                        return Err(CorrelatorError::BadComponent(format!(
                            "exponent term q^{o} w^{:?} has grade {gr} on the chosen contour",
                            &k[..nvars]
                        )));
                    }
                    if o <= cap {
                        active = true;
                        kept.add_at(o, c);
                    }
                }
                if kept.is_zero() {
                    continue;
                }
                if v.max_order() < cap {
                    return Err(CorrelatorError::Precision(format!(
                        "mode {n}: coefficient of w^{:?} known to q^{} < q^{cap}",
                        &k[..nvars],
                        v.max_order()
                    )));
                }
                let merged = match terms.remove(&k) {
                    Some(prev) => &prev + &kept,
                    None => kept,
                };
                terms.insert(k, merged);
            }
        }
        idle = if active { 0 } else { idle + 1 };
        n += 1;
    }
    Ok(Exponent {
        flat,
        zero_order: zero_log.factor()?,
        terms,
    })
}

/// Lowest-order w-dependent exponent terms, used to place the contour.
fn exponent_constraints(list: &FactorList) -> Result<Vec<Monomial>, CorrelatorError> {
    let mut out = Vec::new();
    for n in 1..=4 {
        let e = mode_exponent(list.sector, &list.slots, list.nvars(), list.mode.primed(), n, 6 * n + 8)?;
        for (k, v) in e {
            if k.iter().all(|d| *d == 0) || v.is_zero() {
                continue;
            }
            out.push(Monomial::new(int(1), 2 * v.min_order(), 0, k));
        }
    }
    Ok(out)
}

/// Expand the exponential-sum form of the integrand (either mode).
pub fn extract_expsum(list: &FactorList, qmax: i32) -> Result<Extraction, CorrelatorError> {
    let (w_dep, w_free) = split(list.factors.iter());
    let mut dens = denominators(&w_dep);
    dens.extend(exponent_constraints(list)?);
    let lambda2 = choose_lambda(list.nvars(), &dens)?;
    let fr = frame(list, lambda2, &w_dep, qmax)?;
    let flat_order = fr.order - fr.v_f;
    let pre = w_free_product(&w_free)?.expand(flat_order)?;
    // The flat part of the exponent has valuation >= 1 so it does not move v_W.
    let ceiling = fr.ceiling(&pre);
    let ex = sum_exponent(list, &lambda2, flat_order, ceiling, None)?;
    let w = (&pre * &ex.flat.exp()?).scale(&ex.zero_order);
    let ceiling = fr.ceiling(&w);
    let f = if fr.nvars == 0 {
        QSeries::one(fr.order)
    } else {
        let (_, muls, divs) = elementary_ops(&w_dep, &lambda2, ceiling)?;
        let mut ops = within(muls, &lambda2, ceiling);
        ops.extend(within(divs, &lambda2, ceiling));
        let budget = fr.budget(ceiling);
        let profiles = fxxz_exactalg::wlaurent::suffix_profiles(&budget, fr.nvars, &ops);
        let mut acc = WLaurent::exp_graded(fr.nvars, budget, &ex.terms, profiles[0].clone())?;
        acc.apply_ops(&ops)?;
        acc.extract(&fr.target)?
    };
    Ok(Extraction {
        series: fr.finish(&w, &f, qmax)?,
        lambda2: lambda2[..fr.nvars].to_vec(),
    })
}

/// `exp(E)` with `w_a = q^{subst_a}`, i.e. the integrand at a point, with the
/// w-free prefactor factors excluded.
pub fn expsum_at(list: &FactorList, subst: &[i32], qmax: i32) -> Result<QSeries, CorrelatorError> {
    let ex = sum_exponent(list, &[0; MAX_W], qmax, 0, Some(subst))?;
    Ok(ex.flat.exp()?.scale(&ex.zero_order))
}

/// Extract with the requested representation.
pub fn extract(list: &FactorList, path: Path, qmax: i32) -> Result<Extraction, CorrelatorError> {
    match path {
        Path::Product => extract_product(list, qmax),
        Path::ExpSum => extract_expsum(list, qmax),
    }
}
