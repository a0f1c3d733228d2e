use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::AlgebraError;
use crate::rpoly::{int, RPoly};

/// A monomial `c * q^q * r^r` with integer exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QrTerm {
    pub c: BigRational,
    pub q: i32,
    pub r: i32,
}

impl QrTerm {
    pub fn new(c: BigRational, q: i32, r: i32) -> Self {
        Self { c, q, r }
    }

    pub fn unit(q: i32, r: i32) -> Self {
        Self::new(BigRational::one(), q, r)
    }

    pub fn mul(&self, o: &QrTerm) -> QrTerm {
        QrTerm::new(&self.c * &o.c, self.q + o.q, self.r + o.r)
    }
}

/// Truncated q-Laurent series whose coefficients are Laurent polynomials in r.
///
/// Every coefficient with exponent `<= max_order` is known exactly; nothing
/// beyond is stored.
#[derive(Clone, Debug)]
pub struct QSeries {
    coeffs: BTreeMap<i32, RPoly>,
    max_order: i32,
    finalized: bool,
}

pub type TruncatedQSeries = QSeries;

impl PartialEq for QSeries {
    fn eq(&self, other: &Self) -> bool {
        self.max_order == other.max_order && self.coeffs == other.coeffs
    }
}

impl Eq for QSeries {}

impl QSeries {
    pub fn zero(max_order: i32) -> Self {
        Self {
            coeffs: BTreeMap::new(),
            max_order,
            finalized: false,
        }
    }

    pub fn one(max_order: i32) -> Self {
        Self::constant(RPoly::one(), max_order)
    }

    pub fn constant(c: RPoly, max_order: i32) -> Self {
        Self::monomial(c, 0, max_order)
    }

    pub fn monomial(c: RPoly, order: i32, max_order: i32) -> Self {
        let mut s = Self::zero(max_order);
        if order <= max_order && !c.is_zero() {
            s.coeffs.insert(order, c);
        }
        s
    }

    pub fn term(t: &QrTerm, max_order: i32) -> Self {
        Self::monomial(RPoly::monomial(t.c.clone(), t.r), t.q, max_order)
    }

    pub fn from_coeffs<I: IntoIterator<Item = (i32, RPoly)>>(it: I, max_order: i32) -> Self {
        let mut s = Self::zero(max_order);
        for (e, c) in it {
            s.add_at(e, &c);
        }
        s
    }

    pub fn max_order(&self) -> i32 {
        self.max_order
    }

    /// Lowest exponent with a nonzero coefficient, or `max_order + 1` when zero.
    pub fn min_order(&self) -> i32 {
        self.coeffs
            .keys()
            .next()
            .copied()
            .unwrap_or(self.max_order + 1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_final(&self) -> bool {
        self.finalized
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i32) -> Option<&RPoly> {
        self.coeffs.get(&e)
    }

    pub fn coeff_or_zero(&self, e: i32) -> RPoly {
        self.coeffs.get(&e).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, &RPoly)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn add_at(&mut self, e: i32, c: &RPoly) {
        if e > self.max_order || c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    fn add_scaled_at(&mut self, e: i32, c: &RPoly, s: &BigRational, rshift: i32) {
        if e > self.max_order || c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(e).or_default();
        slot.add_scaled(c, s, rshift);
        if slot.is_zero() {
            self.coeffs.remove(&e);
        }
    }

    /// Lower the truncation order (never raises it).
    pub fn truncate(mut self, max_order: i32) -> Self {
        if max_order < self.max_order {
            self.max_order = max_order;
            self.coeffs.retain(|e, _| *e <= max_order);
        }
        self
    }

    /// Declare the series as a physical result: negative powers must vanish.
    pub fn finalize(mut self) -> Result<Self, AlgebraError> {
        if let Some((&e, _)) = self.coeffs.iter().next() {
            if e < 0 {
                return Err(AlgebraError::NegativeOrder { order: e });
            }
        }
        self.finalized = true;
        Ok(self)
    }

    pub fn scale(&self, c: &RPoly) -> Self {
        let mut out = Self::zero(self.max_order);
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.coeffs {
            out.add_at(*e, &(v * c));
        }
        out
    }

    pub fn scale_rational(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.max_order);
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.coeffs {
            out.coeffs.insert(*e, v.scale(c));
        }
        out
    }

    /// Multiply by the exact monomial `c q^a r^k`.
    pub fn mul_term(&self, t: &QrTerm) -> Self {
        let mut out = Self::zero(self.max_order + t.q);
        if t.c.is_zero() {
            return out;
        }
        for (e, v) in &self.coeffs {
            out.coeffs.insert(e + t.q, v.mul_term(&t.c, t.r));
        }
        out
    }

    /// `self * (1 - m)` with `m` exact.
    pub fn mul_one_minus(&self, m: &QrTerm) -> Self {
        let max = self.max_order + m.q.min(0);
        let mut out = self.clone().truncate(max);
        let neg = -&m.c;
        for (e, v) in &self.coeffs {
            out.add_scaled_at(e + m.q, v, &neg, m.r);
        }
        out
    }

    /// `self / (1 - m)` for `m` of strictly positive q-order.
    pub fn div_one_minus(&self, m: &QrTerm) -> Result<Self, AlgebraError> {
        if m.q <= 0 {
            return Err(AlgebraError::NonPositiveCost { cost: m.q as i64 });
        }
        let mut out = Self::zero(self.max_order);
        let lo = self.min_order();
        for e in lo..=self.max_order {
            let mut acc = self.coeff_or_zero(e);
            if let Some(prev) = out.coeffs.get(&(e - m.q)) {
                acc.add_scaled(prev, &m.c, m.r);
            }
            if !acc.is_zero() {
                out.coeffs.insert(e, acc);
            }
        }
        Ok(out)
    }

    /// Substitute `r -> 1/r`.
    pub fn invert_r(&self) -> Self {
        self.map_coeffs(|c| c.invert_r())
    }

    pub fn map_coeffs<F: Fn(&RPoly) -> RPoly>(&self, f: F) -> Self {
        let mut out = Self::zero(self.max_order);
        for (e, v) in &self.coeffs {
            out.add_at(*e, &f(v));
        }
        out
    }

    /// Substitute `q -> q^m` for a positive integer `m`.
    pub fn dilate(&self, m: i32) -> Self {
        assert!(m > 0, "dilation factor must be positive");
        let mut out = Self::zero(self.max_order * m + (m - 1));
        for (e, v) in &self.coeffs {
            out.coeffs.insert(e * m, v.clone());
        }
        out
    }

    /// Substitute an exact rational value for `r`.
    pub fn substitute_r(&self, r: &BigRational) -> Result<Self, AlgebraError> {
        let mut out = Self::zero(self.max_order);
        for (e, v) in &self.coeffs {
            let x = v
                .eval_exact(r)
                .ok_or_else(|| AlgebraError::Substitution(format!("negative r-power at q^{e}")))?;
            out.add_at(*e, &RPoly::constant(x));
        }
        Ok(out)
    }

    /// First exponent, up to the common truncation, where the two series differ.
    pub fn first_mismatch(&self, other: &QSeries) -> Option<i32> {
        let top = self.max_order.min(other.max_order);
        let lo = self.min_order().min(other.min_order());
        (lo..=top).find(|&e| self.coeff(e) != other.coeff(e))
    }

    pub fn agrees_with(&self, other: &QSeries) -> bool {
        self.first_mismatch(other).is_none()
    }

    pub fn exp(&self) -> Result<Self, AlgebraError> {
        if let Some((&e, _)) = self.coeffs.iter().next() {
            if e < 1 {
                return Err(AlgebraError::ExpConstantTerm { order: e });
            }
        }
        let max = self.max_order;
        if max < 0 {
            return Ok(Self::zero(max));
        }
        let mut f: Vec<RPoly> = Vec::with_capacity(max as usize + 1);
        f.push(RPoly::one());
        for n in 1..=max {
            let mut acc = RPoly::zero();
            for (k, a) in self.coeffs.range(1..=n) {
                let prev = &f[(n - k) as usize];
                if prev.is_zero() {
                    continue;
                }
                let mut prod = a * prev;
                if *k != 1 {
                    prod = prod.scale(&int(*k as i64));
                }
                acc += &prod;
            }
            f.push(acc.scale(&BigRational::new(1.into(), n.into())));
        }
        Ok(Self::from_coeffs(
            f.into_iter().enumerate().map(|(e, c)| (e as i32, c)),
            max,
        ))
    }

    pub fn sqrt(&self) -> Result<Self, AlgebraError> {
        if self.min_order() < 0 || !self.coeff(0).is_some_and(|c| c.is_one()) {
            return Err(AlgebraError::SqrtConstantNotOne);
        }
        let max = self.max_order;
        let half = BigRational::new(1.into(), 2.into());
        let mut f: Vec<RPoly> = vec![RPoly::one()];
        for n in 1..=max {
            let mut acc = self.coeff_or_zero(n);
            for k in 1..n {
                let (a, b) = (&f[k as usize], &f[(n - k) as usize]);
                if !a.is_zero() && !b.is_zero() {
                    acc -= &(a * b);
                }
            }
            f.push(acc.scale(&half));
        }
        Ok(Self::from_coeffs(
            f.into_iter().enumerate().map(|(e, c)| (e as i32, c)),
            max,
        ))
    }

    pub fn reciprocal(&self) -> Result<Self, AlgebraError> {
        let v = match self.coeffs.keys().next() {
            Some(v) => *v,
            None => return Err(AlgebraError::ZeroSeries),
        };
        let lead = &self.coeffs[&v];
        let (c, k) = lead
            .as_unit()
            .ok_or_else(|| AlgebraError::NonUnitLeading(lead.to_string()))?;
        let inv_c = c.recip();
        let depth = self.max_order - v;
        let mut b: Vec<RPoly> = vec![RPoly::monomial(inv_c.clone(), -k)];
        let neg_inv = -&inv_c;
        for n in 1..=depth {
            let mut acc = RPoly::zero();
            for (e, a) in self.coeffs.range(v + 1..=v + n) {
                let prev = &b[(n - (e - v)) as usize];
                if !prev.is_zero() {
                    acc.add_product(a, prev);
                }
            }
            b.push(acc.mul_term(&neg_inv, -k));
        }
        Ok(Self::from_coeffs(
            b.into_iter().enumerate().map(|(e, c)| (e as i32 - v, c)),
            depth - v,
        ))
    }

    pub fn pow(&self, n: u32) -> Self {
        if n == 0 {
            return Self::one(self.max_order - self.min_order());
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = &acc * self;
        }
        acc
    }

    /// Numeric value at real `(q, r)` together with a crude tail estimate.
    pub fn eval(&self, q: f64, r: f64) -> (f64, f64) {
        let mut v = 0.0;
        let mut last = 0.0;
        for (e, c) in &self.coeffs {
            let t = c.eval(r) * q.powi(*e);
            v += t;
            last = t.abs();
        }
        let aq = q.abs();
        let gap = (self.max_order + 1 - self.coeffs.keys().next_back().copied().unwrap_or(0))
            .max(1);
        let tail = last * aq.powi(gap) / (1.0 - aq).max(1e-12);
        (v, tail)
    }
}

impl<'a> Add<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn add(self, rhs: &QSeries) -> QSeries {
        let max = self.max_order.min(rhs.max_order);
        let mut out = self.clone().truncate(max);
        out.finalized = false;
        for (e, v) in &rhs.coeffs {
            out.add_at(*e, v);
        }
        out
    }
}

impl<'a> Sub<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn sub(self, rhs: &QSeries) -> QSeries {
        self + &(-rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        let mut out = QSeries::zero(self.max_order);
        for (e, v) in &self.coeffs {
            out.coeffs.insert(*e, -v);
        }
        out
    }
}

impl<'a> Mul<&'a QSeries> for &'a QSeries {
    type Output = QSeries;
    fn mul(self, rhs: &QSeries) -> QSeries {
        let max = (self.max_order + rhs.min_order()).min(rhs.max_order + self.min_order());
        let mut out = QSeries::zero(max);
        let mut acc: BTreeMap<i32, RPoly> = BTreeMap::new();
        for (ea, va) in &self.coeffs {
            for (eb, vb) in rhs.coeffs.range(..=max - ea) {
                acc.entry(ea + eb).or_default().add_product(va, vb);
            }
        }
        acc.retain(|_, v| !v.is_zero());
        out.coeffs = acc;
        out
    }
}

impl Add for QSeries {
    type Output = QSeries;
    fn add(self, rhs: QSeries) -> QSeries {
        &self + &rhs
    }
}

impl Sub for QSeries {
    type Output = QSeries;
    fn sub(self, rhs: QSeries) -> QSeries {
        &self - &rhs
    }
}

impl Mul for QSeries {
    type Output = QSeries;
    fn mul(self, rhs: QSeries) -> QSeries {
        &self * &rhs
    }
}

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        -&self
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match *e {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*q")?,
                _ => write!(f, "({c})*q^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.max_order + 1)
    }
}
