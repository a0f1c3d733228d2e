//! Laurent polynomials in the integration variables `w_1..w_n` with truncated
//! q-series coefficients.
//!
//! Truncation is controlled by a grading: substituting `w_a = q^{λ_a} v_a`
//! gives a term `q^e w^k` the grade `2e + Σ λ2_a k_a` (with `λ2 = 2λ`, so
//! half-integer contour radii are allowed). All factors are normalised to
//! `(1 - m)^{±1}` with `grade(m) >= 0`, so grades only grow and a term can be
//! dropped as soon as its grade plus the cheapest way back to the target
//! exponent exceeds the ceiling.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::AlgebraError;
use crate::rpoly::{int, RPoly};
use crate::series::{QSeries, QrTerm};

pub const MAX_W: usize = 4;
pub type WKey = [i32; MAX_W];

const INF: i64 = i64::MAX / 4;

pub fn key_add(a: &WKey, b: &WKey) -> WKey {
    let mut k = [0; MAX_W];
    for i in 0..MAX_W {
        k[i] = a[i] + b[i];
    }
    k
}

pub fn key_sub(a: &WKey, b: &WKey) -> WKey {
    let mut k = [0; MAX_W];
    for i in 0..MAX_W {
        k[i] = a[i] - b[i];
    }
    k
}

pub fn key_scale(a: &WKey, t: i32) -> WKey {
    let mut k = [0; MAX_W];
    for i in 0..MAX_W {
        k[i] = a[i] * t;
    }
    k
}

/// `c q^q r^r w^w`
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WTerm {
    pub c: BigRational,
    pub q: i32,
    pub r: i32,
    pub w: WKey,
}

impl WTerm {
    pub fn new(c: BigRational, q: i32, r: i32, w: WKey) -> Self {
        Self { c, q, r, w }
    }

    pub fn qr(&self) -> QrTerm {
        QrTerm::new(self.c.clone(), self.q, self.r)
    }

    pub fn mul(&self, o: &WTerm) -> WTerm {
        WTerm::new(&self.c * &o.c, self.q + o.q, self.r + o.r, key_add(&self.w, &o.w))
    }

    pub fn recip(&self) -> WTerm {
        WTerm::new(self.c.recip(), -self.q, -self.r, key_scale(&self.w, -1))
    }

    pub fn is_w_free(&self) -> bool {
        self.w.iter().all(|x| *x == 0)
    }
}

/// Contour grading: twice the radius exponent of each variable, and the
/// largest grade that can still reach the requested order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    pub lambda2: WKey,
    pub ceiling: i64,
}

impl Grading {
    pub fn grade(&self, q: i32, w: &WKey) -> i64 {
        let mut g = 2 * q as i64;
        for i in 0..MAX_W {
            g += self.lambda2[i] as i64 * w[i] as i64;
        }
        g
    }

    pub fn term_grade(&self, t: &WTerm) -> i64 {
        self.grade(t.q, &t.w)
    }

    fn w_grade(&self, w: &WKey) -> i64 {
        self.grade(0, w)
    }
}

/// One elementary factor: multiply or divide by `(1 - m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElemOp {
    Mul(WTerm),
    Div(WTerm),
}

impl ElemOp {
    pub fn term(&self) -> &WTerm {
        match self {
            ElemOp::Mul(t) | ElemOp::Div(t) => t,
        }
    }
}

/// Minimal grade needed to shift the (single) w-exponent by `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    lo: i32,
    cost: Vec<i64>,
}

impl Profile {
    /// Only the zero shift, at zero cost.
    pub fn terminal(window: i32) -> Self {
        let mut cost = vec![INF; (2 * window + 1) as usize];
        cost[window as usize] = 0;
        Self { lo: -window, cost }
    }

    pub fn at(&self, s: i32) -> i64 {
        let i = s - self.lo;
        if i < 0 || i as usize >= self.cost.len() {
            INF
        } else {
            self.cost[i as usize]
        }
    }

    /// Allow the move `(d, c)` once (`repeat = false`) or any number of times.
    pub fn with_move(&self, d: i32, c: i64, repeat: bool) -> Self {
        let mut next = self.cost.clone();
        let n = next.len() as i32;
        if d == 0 {
            return Self {
                lo: self.lo,
                cost: next,
            };
        }
        if repeat {
            let order: Box<dyn Iterator<Item = i32>> = if d > 0 {
                Box::new(0..n)
            } else {
                Box::new((0..n).rev())
            };
            for i in order {
                let j = i - d;
                if j >= 0 && j < n && next[j as usize] < INF {
                    let cand = next[j as usize] + c;
                    if cand < next[i as usize] {
                        next[i as usize] = cand;
                    }
                }
            }
        } else {
            for i in 0..n {
                let j = i - d;
                if j >= 0 && j < n && self.cost[j as usize] < INF {
                    let cand = self.cost[j as usize] + c;
                    if cand < next[i as usize] {
                        next[i as usize] = cand;
                    }
                }
            }
        }
        Self {
            lo: self.lo,
            cost: next,
        }
    }
}

/// Truncation context: grading, the exponent that will finally be extracted,
/// and (for one variable) the cost profile of the factors still to come.
#[derive(Clone, Debug)]
pub struct Budget {
    pub grading: Grading,
    pub target: WKey,
    pub profile: Option<Profile>,
}

impl Budget {
    pub fn new(grading: Grading, target: WKey) -> Self {
        Self {
            grading,
            target,
            profile: None,
        }
    }

    /// Minimal additional grade needed to bring exponent `k` to the target.
    pub fn prune_bound(&self, k: &WKey) -> i64 {
        match &self.profile {
            Some(p) => p.at(self.target[0] - k[0]),
            None => 0,
        }
    }

    /// Highest q-exponent worth keeping at w-exponent `k`.
    pub fn cap(&self, k: &WKey) -> Option<i32> {
        let b = self.prune_bound(k);
        if b >= INF {
            return None;
        }
        let room = self.grading.ceiling - b - self.grading.w_grade(k);
        Some(room.div_euclid(2).clamp(i32::MIN as i64 / 2, i32::MAX as i64 / 2) as i32)
    }

    fn with_profile(&self, profile: Option<Profile>) -> Self {
        Self {
            grading: self.grading.clone(),
            target: self.target,
            profile,
        }
    }
}

/// Profiles before each op in `ops` (index `i` = cost still available from
/// `ops[i..]`), plus the terminal profile at the end.
pub fn suffix_profiles(budget: &Budget, nvars: usize, ops: &[ElemOp]) -> Vec<Option<Profile>> {
    if nvars != 1 {
        return vec![None; ops.len() + 1];
    }
    let g = &budget.grading;
    let mut min_unit = f64::INFINITY;
    let mut free_shift = 0i64;
    for op in ops {
        let t = op.term();
        let d = t.w[0];
        if d == 0 {
            continue;
        }
        let c = g.term_grade(t);
        if c > 0 {
            min_unit = min_unit.min(c as f64 / d.abs() as f64);
        } else {
            free_shift += d.abs() as i64;
        }
    }
    let reach = if min_unit.is_finite() {
        (g.ceiling.max(0) as f64 / min_unit).ceil() as i64
    } else {
        0
    };
    let window = (reach + free_shift + 2).min(1 << 20) as i32;
    let mut out = vec![None; ops.len() + 1];
    let mut p = Profile::terminal(window);
    out[ops.len()] = Some(p.clone());
    for (i, op) in ops.iter().enumerate().rev() {
        let t = op.term();
        let c = g.term_grade(t).max(0);
        p = match op {
            ElemOp::Mul(_) => p.with_move(t.w[0], c, false),
            ElemOp::Div(_) => p.with_move(t.w[0], c, true),
        };
        out[i] = Some(p.clone());
    }
    out
}

/// Close a profile under unlimited use of the given `(shift, grade)` moves.
pub fn close_profile(p: &Profile, moves: &[(i32, i64)]) -> Profile {
    let mut best: BTreeMap<i32, i64> = BTreeMap::new();
    for (d, c) in moves {
        let e = best.entry(*d).or_insert(*c);
        if *c < *e {
            *e = *c;
        }
    }
    let mut out = p.clone();
    for (d, c) in best {
        out = out.with_move(d, c, true);
    }
    out
}

#[derive(Clone, Debug)]
pub struct WLaurent {
    nvars: usize,
    budget: Budget,
    terms: BTreeMap<WKey, QSeries>,
}

impl WLaurent {
    /// The constant 1.
    pub fn one(nvars: usize, budget: Budget) -> Self {
        let mut terms = BTreeMap::new();
        let z = [0; MAX_W];
        if let Some(cap) = budget.cap(&z) {
            if cap >= 0 {
                terms.insert(z, QSeries::one(cap));
            }
        }
        Self {
            nvars,
            budget,
            terms,
        }
    }

    pub fn from_terms(nvars: usize, budget: Budget, terms: BTreeMap<WKey, QSeries>) -> Self {
        let mut out = Self {
            nvars,
            budget,
            terms: BTreeMap::new(),
        };
        for (k, s) in terms {
            out.store(k, s);
        }
        out
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn budget(&self) -> &Budget {
        &self.budget
    }

    pub fn terms(&self) -> impl Iterator<Item = (&WKey, &QSeries)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (w, q, r) coefficients.
    pub fn weight(&self) -> usize {
        self.terms
            .values()
            .map(|s| s.iter().map(|(_, c)| c.len()).sum::<usize>())
            .sum()
    }

    fn store(&mut self, k: WKey, s: QSeries) {
        if let Some(cap) = self.budget.cap(&k) {
            let s = s.truncate(cap);
            if !s.is_zero() {
                self.terms.insert(k, s);
            }
        }
    }

    /// Replace the pruning profile, dropping whatever it rules out.
    pub fn reprofile(&mut self, profile: Option<Profile>) {
        self.budget = self.budget.with_profile(profile);
        let old = std::mem::take(&mut self.terms);
        for (k, s) in old {
            self.store(k, s);
        }
    }

    /// Apply `ops` in order with suffix-profile pruning.
    pub fn apply_ops(&mut self, ops: &[ElemOp]) -> Result<(), AlgebraError> {
        let profiles = suffix_profiles(&self.budget, self.nvars, ops);
        self.reprofile(profiles[0].clone());
        for (i, op) in ops.iter().enumerate() {
            self.apply(op, profiles[i + 1].clone())?;
        }
        Ok(())
    }

    /// Apply one op; `after` is the profile of the ops still to come.
    pub fn apply(&mut self, op: &ElemOp, after: Option<Profile>) -> Result<(), AlgebraError> {
        let cost = self.budget.grading.term_grade(op.term());
        match op {
            ElemOp::Mul(m) => {
                if cost < 0 {
                    return Err(AlgebraError::NonPositiveCost { cost });
                }
                self.mul_one_minus(m, after);
            }
            ElemOp::Div(m) => {
                if cost <= 0 {
                    return Err(AlgebraError::NonPositiveCost { cost });
                }
                self.div_one_minus(m, after);
            }
        }
        Ok(())
    }

    fn mul_one_minus(&mut self, m: &WTerm, after: Option<Profile>) {
        let old = std::mem::take(&mut self.terms);
        self.budget = self.budget.with_profile(after);
        let neg = -&m.c;
        let mut acc: BTreeMap<WKey, QSeries> = BTreeMap::new();
        for (k, s) in &old {
            let k2 = key_add(k, &m.w);
            if let Some(cap) = self.budget.cap(&k2) {
                let shifted = s.mul_term(&QrTerm::new(neg.clone(), m.q, m.r)).truncate(cap);
                if !shifted.is_zero() {
                    match acc.remove(&k2) {
                        Some(prev) => {
                            acc.insert(k2, &prev + &shifted);
                        }
                        None => {
                            acc.insert(k2, shifted);
                        }
                    }
                }
            }
        }
        for (k, s) in old {
            let merged = match acc.remove(&k) {
                Some(extra) => &s + &extra,
                None => s,
            };
            self.store(k, merged);
        }
        for (k, s) in acc {
            self.store(k, s);
        }
    }

    fn div_one_minus(&mut self, m: &WTerm, after: Option<Profile>) {
        let before = self.budget.clone();
        let old = std::mem::take(&mut self.terms);
        self.budget = self.budget.with_profile(after);
        let mq = m.qr();
        if m.is_w_free() {
            for (k, s) in old {
                let cap = before.cap(&k).unwrap_or(s.max_order());
                let s = s.truncate(cap);
                let g = s.div_one_minus(&mq).expect("positive cost checked");
                self.store(k, g);
            }
            return;
        }
        let d = m.w;
        let i0 = (0..MAX_W).find(|&i| d[i] != 0).unwrap();
        let mut chains: HashMap<WKey, BTreeMap<i32, QSeries>> = HashMap::new();
        for (k, s) in old {
            let t = k[i0].div_euclid(d[i0]);
            let base = key_sub(&k, &key_scale(&d, t));
            chains.entry(base).or_default().insert(t, s);
        }
        let mut bases: Vec<WKey> = chains.keys().copied().collect();
        bases.sort();
        for base in bases {
            let mut chain = chains.remove(&base).unwrap();
            let t_max = *chain.keys().next_back().unwrap();
            let mut t = *chain.keys().next().unwrap();
            let mut carry: Option<QSeries> = None;
            loop {
                let key = key_add(&base, &key_scale(&d, t));
                let f = chain.remove(&t);
                let cap = before.cap(&key);
                let g = match (f, carry.take(), cap) {
                    (_, _, None) => None,
                    (f, c, Some(cap)) => {
                        let shifted = c.map(|c| c.mul_term(&mq).truncate(cap));
                        let g = match (f, shifted) {
                            (Some(f), Some(s)) => &f.truncate(cap) + &s,
                            (Some(f), None) => f.truncate(cap),
                            (None, Some(s)) => s,
                            (None, None) => QSeries::zero(cap),
                        };
                        if g.is_zero() {
                            None
                        } else {
                            Some(g)
                        }
                    }
                };
                if let Some(g) = g {
                    self.store(key, g.clone());
                    carry = Some(g);
                } else if t >= t_max {
                    break;
                }
                t += 1;
            }
        }
    }

    /// Product of two objects sharing one budget.
    pub fn mul(&self, other: &WLaurent) -> WLaurent {
        let mut acc: BTreeMap<WKey, QSeries> = BTreeMap::new();
        for (ka, sa) in &self.terms {
            for (kb, sb) in &other.terms {
                let k = key_add(ka, kb);
                let cap = match self.budget.cap(&k) {
                    Some(c) => c,
                    None => continue,
                };
                let p = (sa * sb).truncate(cap);
                if p.is_zero() {
                    continue;
                }
                let merged = match acc.remove(&k) {
                    Some(prev) => &prev + &p,
                    None => p,
                };
                acc.insert(k, merged);
            }
        }
        WLaurent::from_terms(self.nvars, self.budget.clone(), acc)
    }

    /// Multiply every coefficient by a w-free series.
    pub fn scale_series(&self, s: &QSeries) -> WLaurent {
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| (*k, v * s))
            .collect::<BTreeMap<_, _>>();
        WLaurent::from_terms(self.nvars, self.budget.clone(), terms)
    }

    /// Coefficient of `w^k`. Only exponents whose coefficient is still fully
    /// determined under the current profile may be read.
    pub fn extract(&self, k: &WKey) -> Result<QSeries, AlgebraError> {
        match self.budget.cap(k) {
            Some(cap) => Ok(self
                .terms
                .get(k)
                .cloned()
                .unwrap_or_else(|| QSeries::zero(cap))),
            None => Err(AlgebraError::OutsideWindow {
                key: k[..self.nvars].to_vec(),
            }),
        }
    }

    /// `exp(E)` for a w-Laurent exponent whose w-dependent terms all have
    /// positive grade; the w-free part must start at `q^1`.
    ///
    /// Uses the Euler recurrence `Φ f_Φ = Σ_j j E_j f_{Φ-j}` on homogeneous
    /// grade components. `after` is the profile of the factors applied later.
    pub fn exp_graded(
        nvars: usize,
        budget: Budget,
        exponent: &BTreeMap<WKey, QSeries>,
        after: Option<Profile>,
    ) -> Result<WLaurent, AlgebraError> {
        let grading = budget.grading.clone();
        let zero = [0; MAX_W];
        let mut moves: Vec<(i64, WKey, RPoly)> = Vec::new();
        let mut flat = QSeries::zero(0);
        let mut have_flat = false;
        for (k, s) in exponent {
            if *k == zero {
                flat = s.clone();
                have_flat = true;
                continue;
            }
            for (a, c) in s.iter() {
                let g = grading.grade(a, k);
                if g <= 0 {
                    return Err(AlgebraError::NonPositiveCost { cost: g });
                }
                if g <= grading.ceiling {
                    moves.push((g, *k, c.clone()));
                }
            }
        }
        let inner = after
            .as_ref()
            .map(|p| close_profile(p, &moves.iter().map(|(g, k, _)| (k[0], *g)).collect::<Vec<_>>()));
        let inner_budget = budget.with_profile(inner);
        let ceiling = grading.ceiling.max(0) as usize;
        let mut by_grade: Vec<Vec<(WKey, &RPoly)>> = vec![Vec::new(); ceiling + 1];
        for (g, k, c) in &moves {
            by_grade[*g as usize].push((*k, c));
        }
        let mut comp: Vec<HashMap<WKey, RPoly>> = vec![HashMap::new(); ceiling + 1];
        comp[0].insert(zero, RPoly::one());
        for phi in 1..=ceiling {
            let mut acc: HashMap<WKey, RPoly> = HashMap::new();
            for (ge, terms) in by_grade.iter().enumerate().take(phi + 1).skip(1) {
                if terms.is_empty() || comp[phi - ge].is_empty() {
                    continue;
                }
                let weight = int(ge as i64);
                for (ke, ce) in terms {
                    let scaled = ce.scale(&weight);
                    for (kf, cf) in &comp[phi - ge] {
                        let k = key_add(ke, kf);
                        if phi as i64 + inner_budget.prune_bound(&k) > grading.ceiling {
                            continue;
                        }
                        acc.entry(k).or_default().add_product(&scaled, cf);
                    }
                }
            }
            let inv = BigRational::new(One::one(), (phi as i64).into());
            comp[phi] = acc
                .into_iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, v)| (k, v.scale(&inv)))
                .collect();
        }
        let out_budget = budget.with_profile(after);
        let mut terms: BTreeMap<WKey, BTreeMap<i32, RPoly>> = BTreeMap::new();
        for (phi, c) in comp.into_iter().enumerate() {
            for (k, v) in c {
                let num = phi as i64 - grading.w_grade(&k);
                debug_assert!(num % 2 == 0, "grade parity mismatch");
                terms.entry(k).or_default().insert((num / 2) as i32, v);
            }
        }
        let mut out = WLaurent {
            nvars,
            budget: out_budget,
            terms: BTreeMap::new(),
        };
        let top = terms
            .keys()
            .filter_map(|k| out.budget.cap(k))
            .max()
            .unwrap_or(0);
        let flat_exp = if have_flat {
            flat.truncate(top).exp()?
        } else {
            QSeries::one(top)
        };
        for (k, coeffs) in terms {
            let cap = match out.budget.cap(&k) {
                Some(c) => c,
                None => continue,
            };
            let s = QSeries::from_coeffs(coeffs, cap);
            let s = if have_flat { &s * &flat_exp } else { s };
            out.store(k, s);
        }
        Ok(out)
    }
}

pub fn wkey(parts: &[i32]) -> WKey {
    let mut k = [0; MAX_W];
    k[..parts.len()].copy_from_slice(parts);
    k
}

pub fn unit_term(q: i32, r: i32, w: &[i32]) -> WTerm {
    WTerm::new(BigRational::one(), q, r, wkey(w))
}

pub fn signed_term(sign: i64, q: i32, r: i32, w: &[i32]) -> WTerm {
    WTerm::new(int(sign), q, r, wkey(w))
}

#[allow(dead_code)]
fn is_zero_rat(c: &BigRational) -> bool {
    c.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget(lambda2: i32, ceiling: i64, target: i32) -> Budget {
        Budget::new(
            Grading {
                lambda2: wkey(&[lambda2]),
                ceiling,
            },
            wkey(&[target]),
        )
    }

    #[test]
    fn inside_pole_has_unit_residue() {
        // 1/(w - A) with A = q^2 inside |w| = |q|: w^{-1} / (1 - A/w)
        let mut f = WLaurent::one(1, budget(2, 20, 0));
        f.apply_ops(&[ElemOp::Div(unit_term(2, 0, &[-1]))]).unwrap();
        let c = f.extract(&wkey(&[0])).unwrap();
        assert_eq!(c, QSeries::one(c.max_order()));
    }

    #[test]
    fn outside_pole_gives_no_residue() {
        // 1/(w - A) with A = q^2 outside |w| = |q|^3: -A^{-1}/(1 - w/A),
        // the w^{-1} coefficient of the series part is zero.
        let mut f = WLaurent::one(1, budget(6, 20, -1));
        f.apply_ops(&[ElemOp::Div(unit_term(-2, 0, &[1]))]).unwrap();
        assert!(f.extract(&wkey(&[-1])).unwrap().is_zero());
    }

    #[test]
    fn shifted_monomial_extraction() {
        // w^{-1}(1 + q w): the w^0 coefficient of (1 + q w) shifted by w^{-1}
        let mut f = WLaurent::one(1, budget(2, 10, 1));
        f.apply_ops(&[ElemOp::Mul(signed_term(-1, 1, 0, &[1]))]).unwrap();
        let c = f.extract(&wkey(&[1])).unwrap();
        assert_eq!(c, QSeries::monomial(RPoly::one(), 1, c.max_order()));
        assert!(f.extract(&wkey(&[5])).is_err());
    }

    #[test]
    fn order_of_factors_is_irrelevant() {
        let ops = vec![
            ElemOp::Div(unit_term(1, 1, &[1])),
            ElemOp::Div(unit_term(2, 0, &[-1])),
            ElemOp::Mul(signed_term(1, 4, 0, &[-2])),
            ElemOp::Div(unit_term(3, -1, &[-1])),
            ElemOp::Mul(unit_term(4, 0, &[2])),
        ];
        let mut a = WLaurent::one(1, budget(3, 40, 0));
        a.apply_ops(&ops).unwrap();
        let mut rev = ops.clone();
        rev.reverse();
        let mut b = WLaurent::one(1, budget(3, 40, 0));
        b.apply_ops(&rev).unwrap();
        let ea = a.extract(&wkey(&[0])).unwrap();
        let eb = b.extract(&wkey(&[0])).unwrap();
        assert!(!ea.is_zero());
        assert_eq!(ea, eb);
    }

    #[test]
    fn graded_exp_matches_product() {
        // exp(-Σ (q^2 w)^n / n) = 1 - q^2 w, exp(-Σ (q^3/w)^n/n) = 1 - q^3/w
        let mut e: BTreeMap<WKey, QSeries> = BTreeMap::new();
        for n in 1..12 {
            let c = RPoly::constant(BigRational::new((-1).into(), n.into()));
            e.insert(wkey(&[n]), QSeries::monomial(c.clone(), 2 * n, 40));
            e.insert(wkey(&[-n]), QSeries::monomial(c, 3 * n, 40));
        }
        for k in -3..=3 {
            let b = budget(1, 24, k);
            let ex = WLaurent::exp_graded(1, b.clone(), &e, None).unwrap();
            let mut want = WLaurent::one(1, b);
            want.apply_ops(&[
                ElemOp::Mul(unit_term(2, 0, &[1])),
                ElemOp::Mul(unit_term(3, 0, &[-1])),
            ])
            .unwrap();
            let key = wkey(&[k]);
            let x = ex.extract(&key).unwrap();
            let y = want.extract(&key).unwrap();
            assert!(x.agrees_with(&y), "w^{k}: {x} vs {y}");
        }
    }
}
