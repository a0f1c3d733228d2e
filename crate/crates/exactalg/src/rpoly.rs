use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Laurent polynomial in `r` with exact rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RPoly {
    terms: BTreeMap<i32, BigRational>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl RPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(int(n))
    }

    pub fn monomial(c: BigRational, k: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        Self { terms }
    }

    /// `r^k`
    pub fn r_pow(k: i32) -> Self {
        Self::monomial(BigRational::one(), k)
    }

    /// Build from `(exponent, coefficient)` pairs, summing repeats.
    pub fn from_terms<I: IntoIterator<Item = (i32, BigRational)>>(it: I) -> Self {
        let mut p = Self::zero();
        for (k, c) in it {
            p.add_term(k, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigRational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i32) -> BigRational {
        self.terms.get(&k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn min_degree(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// The single term `(c, k)` if this is a unit of the Laurent ring.
    pub fn as_unit(&self) -> Option<(&BigRational, i32)> {
        if self.terms.len() == 1 {
            let (k, c) = self.terms.iter().next().unwrap();
            Some((c, *k))
        } else {
            None
        }
    }

    pub fn constant_term(&self) -> BigRational {
        self.coeff(0)
    }

    pub fn add_term(&mut self, k: i32, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c.clone());
            }
        }
    }

    /// `self += c * r^shift * other`
    pub fn add_scaled(&mut self, other: &RPoly, c: &BigRational, shift: i32) {
        if c.is_zero() {
            return;
        }
        let unit = c.is_one();
        for (k, v) in &other.terms {
            if unit {
                self.add_term(k + shift, v);
            } else {
                self.add_term(k + shift, &(v * c));
            }
        }
    }

    /// `self += a * b`
    pub fn add_product(&mut self, a: &RPoly, b: &RPoly) {
        for (ka, va) in &a.terms {
            for (kb, vb) in &b.terms {
                self.add_term(ka + kb, &(va * vb));
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> RPoly {
        if c.is_zero() {
            return RPoly::zero();
        }
        RPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Multiply by `r^k`.
    pub fn shift(&self, k: i32) -> RPoly {
        RPoly {
            terms: self.terms.iter().map(|(e, v)| (e + k, v.clone())).collect(),
        }
    }

    /// `c * r^k * self`
    pub fn mul_term(&self, c: &BigRational, k: i32) -> RPoly {
        if c.is_zero() {
            return RPoly::zero();
        }
        RPoly {
            terms: self.terms.iter().map(|(e, v)| (e + k, v * c)).collect(),
        }
    }

    /// Substitute `r -> 1/r`.
    pub fn invert_r(&self) -> RPoly {
        RPoly {
            terms: self.terms.iter().map(|(k, v)| (-k, v.clone())).collect(),
        }
    }

    /// Substitute `r -> r^m`.
    pub fn power_r(&self, m: i32) -> RPoly {
        RPoly {
            terms: self.terms.iter().map(|(k, v)| (k * m, v.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> RPoly {
        let mut acc = RPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact value at a rational `r`; fails on `r = 0` with negative powers.
    pub fn eval_exact(&self, r: &BigRational) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (k, v) in &self.terms {
            if r.is_zero() {
                if *k < 0 {
                    return None;
                }
                if *k == 0 {
                    acc += v;
                }
                continue;
            }
            let p = if *k >= 0 {
                num_traits::pow(r.clone(), *k as usize)
            } else {
                num_traits::pow(r.recip(), (-*k) as usize)
            };
            acc += v * p;
        }
        Some(acc)
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.terms
            .iter()
            .map(|(k, v)| v.to_f64().unwrap_or(f64::NAN) * r.powi(*k))
            .sum()
    }

    /// Largest absolute coefficient, as `f64` (for tail estimates).
    pub fn max_abs(&self) -> f64 {
        self.terms
            .values()
            .map(|v| v.abs().to_f64().unwrap_or(f64::INFINITY))
            .fold(0.0, f64::max)
    }
}

impl From<BigRational> for RPoly {
    fn from(c: BigRational) -> Self {
        RPoly::constant(c)
    }
}

impl<'a> Add<&'a RPoly> for &'a RPoly {
    type Output = RPoly;
    fn add(self, rhs: &RPoly) -> RPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a RPoly> for &'a RPoly {
    type Output = RPoly;
    fn sub(self, rhs: &RPoly) -> RPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a RPoly> for &'a RPoly {
    type Output = RPoly;
    fn mul(self, rhs: &RPoly) -> RPoly {
        let mut out = RPoly::zero();
        out.add_product(self, rhs);
        out
    }
}

impl Neg for &RPoly {
    type Output = RPoly;
    fn neg(self) -> RPoly {
        RPoly {
            terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect(),
        }
    }
}

impl Add for RPoly {
    type Output = RPoly;
    fn add(self, rhs: RPoly) -> RPoly {
        &self + &rhs
    }
}

impl Sub for RPoly {
    type Output = RPoly;
    fn sub(self, rhs: RPoly) -> RPoly {
        &self - &rhs
    }
}

impl Mul for RPoly {
    type Output = RPoly;
    fn mul(self, rhs: RPoly) -> RPoly {
        &self * &rhs
    }
}

impl Neg for RPoly {
    type Output = RPoly;
    fn neg(self) -> RPoly {
        -&self
    }
}

impl AddAssign<&RPoly> for RPoly {
    fn add_assign(&mut self, rhs: &RPoly) {
        for (k, v) in &rhs.terms {
            self.add_term(*k, v);
        }
    }
}

impl SubAssign<&RPoly> for RPoly {
    fn sub_assign(&mut self, rhs: &RPoly) {
        for (k, v) in &rhs.terms {
            self.add_term(*k, &-v);
        }
    }
}

impl fmt::Display for RPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, v) in &self.terms {
            let neg = v.is_negative();
            let a = v.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = !a.is_one() || *k == 0;
            if show_coeff {
                write!(f, "{a}")?;
            }
            match *k {
                0 => {}
                1 => write!(f, "{}r", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}r^{}", if show_coeff { "*" } else { "" }, k)?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_cancels_to_canonical_zero() {
        let p = RPoly::from_terms([(0, int(1)), (1, int(-1))]);
        let d = &p - &p;
        assert!(d.is_zero());
        assert_eq!(d, RPoly::zero());
    }

    #[test]
    fn product_and_inversion() {
        let one_minus_r = RPoly::from_terms([(0, int(1)), (1, int(-1))]);
        let sq = &one_minus_r * &one_minus_r;
        assert_eq!(sq, RPoly::from_terms([(0, int(1)), (1, int(-2)), (2, int(1))]));
        let inv = one_minus_r.invert_r();
        assert_eq!(inv.min_degree(), Some(-1));
        assert_eq!(format!("{sq}"), "1 - 2*r + r^2");
    }

    #[test]
    fn exact_evaluation() {
        let p = RPoly::from_terms([(-1, int(2)), (2, int(3))]);
        assert_eq!(p.eval_exact(&int(-1)), Some(int(1)));
        assert_eq!(p.eval_exact(&BigRational::zero()), None);
    }
}
