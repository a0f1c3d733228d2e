use std::fmt;

use fxxz_exactalg::{AlgebraError, QSeries};
use thiserror::Error;

use crate::monomial::Monomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProductError {
    #[error("base {0} is not a positive power of q; the product would not truncate")]
    NonPositiveBase(String),
    #[error("argument {0} has negative q-order")]
    NegativeArgument(String),
    #[error("factor {0} carries w and cannot be expanded as a plain series")]
    CarriesW(String),
    #[error("factor {0} has a half-integer q-exponent")]
    HalfInteger(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// `(arg; b_1, ..., b_N)_∞^power` with every `b_i` a positive power of q.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pochhammer {
    pub arg: Monomial,
    bases: Vec<Monomial>,
    pub power: i32,
}

impl Pochhammer {
    pub fn new(arg: Monomial, bases: &[Monomial]) -> Result<Self, ProductError> {
        for b in bases {
            if !b.is_pure_q_power() || b.q2 <= 0 {
                return Err(ProductError::NonPositiveBase(b.to_string()));
            }
        }
        Ok(Self {
            arg,
            bases: bases.to_vec(),
            power: 1,
        })
    }

    /// `(arg; q^{e_1}, ..., q^{e_N})_∞`
    pub fn q_bases(arg: Monomial, exps: &[i32]) -> Self {
        let bases: Vec<Monomial> = exps.iter().map(|e| Monomial::q(*e)).collect();
        Self::new(arg, &bases).expect("positive q exponents")
    }

    pub fn pow(mut self, power: i32) -> Self {
        self.power *= power;
        self
    }

    pub fn inverse(self) -> Self {
        self.pow(-1)
    }

    pub fn bases(&self) -> &[Monomial] {
        &self.bases
    }

    /// Visit `arg · Π b_i^{n_i}` over the lattice, pruning a direction as soon
    /// as `keep` fails. `keep` must be monotone along every base direction.
    pub fn for_each_factor<K, V>(&self, mut keep: K, mut visit: V)
    where
        K: FnMut(&Monomial) -> bool,
        V: FnMut(Monomial),
    {
        fn rec<K, V>(bases: &[Monomial], x: Monomial, keep: &mut K, visit: &mut V)
        where
            K: FnMut(&Monomial) -> bool,
            V: FnMut(Monomial),
        {
            match bases.split_first() {
                None => {
                    if keep(&x) {
                        visit(x)
                    }
                }
                Some((b, rest)) => {
                    let mut x = x;
                    while keep(&x) {
                        rec(rest, x.clone(), keep, visit);
                        x = &x * b;
                    }
                }
            }
        }
        if self.arg.is_zero() {
            return;
        }
        rec(&self.bases, self.arg.clone(), &mut keep, &mut visit);
    }

    /// Factors `m` with `(1 - m)` contributing below `q^{qmax}`.
    pub fn factors_to(&self, qmax: i32) -> Result<Vec<Monomial>, ProductError> {
        if self.arg.has_w() {
            return Err(ProductError::CarriesW(self.arg.to_string()));
        }
        if self.arg.q2 < 0 {
            return Err(ProductError::NegativeArgument(self.arg.to_string()));
        }
        let mut out = Vec::new();
        self.for_each_factor(|m| m.q2 <= 2 * qmax, |m| out.push(m));
        for m in &out {
            if m.q_exp().is_none() {
                return Err(ProductError::HalfInteger(m.to_string()));
            }
        }
        Ok(out)
    }

    /// Multiply `acc` by this product truncated at `acc`'s order.
    pub fn apply_to(&self, acc: &QSeries) -> Result<QSeries, ProductError> {
        let factors = self.factors_to(acc.max_order() - acc.min_order().min(acc.max_order()))?;
        let mut out = acc.clone();
        for _ in 0..self.power.abs() {
            for m in &factors {
                let t = m.to_qr().expect("checked above");
                out = if self.power > 0 {
                    out.mul_one_minus(&t)
                } else {
                    out.div_one_minus(&t).map_err(|e| match e {
                        AlgebraError::NonPositiveCost { .. } => {
                            AlgebraError::NonUnitLeading(format!("1 - {m}"))
                        }
                        other => other,
                    })?
                };
            }
        }
        Ok(out)
    }

    pub fn expand(&self, qmax: i32) -> Result<QSeries, ProductError> {
        self.apply_to(&QSeries::one(qmax))
    }
}

impl fmt::Display for Pochhammer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bases: Vec<String> = self.bases.iter().map(|b| b.to_string()).collect();
        write!(f, "({}; {})_inf", self.arg, bases.join(", "))?;
        if self.power != 1 {
            write!(f, "^{}", self.power)?;
        }
        Ok(())
    }
}

/// A finite product of q-Pochhammer symbols and their inverses.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QProduct {
    pub factors: Vec<Pochhammer>,
}

impl QProduct {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, p: Pochhammer) -> Self {
        self.factors.push(p);
        self
    }

    pub fn push(&mut self, p: Pochhammer) {
        self.factors.push(p);
    }

    pub fn extend(&mut self, other: QProduct) {
        self.factors.extend(other.factors);
    }

    pub fn inverse(&self) -> Self {
        Self {
            factors: self.factors.iter().cloned().map(Pochhammer::inverse).collect(),
        }
    }

    /// Substitute `r -> 1/r` in every argument.
    pub fn invert_r(&self) -> Self {
        let mut out = self.clone();
        for p in &mut out.factors {
            p.arg.r = -p.arg.r;
        }
        out
    }

    /// Numerator factors first so that divisions act on a polynomial.
    pub fn expand(&self, qmax: i32) -> Result<QSeries, ProductError> {
        let mut acc = QSeries::one(qmax);
        for p in self.factors.iter().filter(|p| p.power > 0) {
            acc = p.apply_to(&acc)?;
        }
        for p in self.factors.iter().filter(|p| p.power < 0) {
            acc = p.apply_to(&acc)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for QProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub fn pochhammer(a: &Monomial, bases: &[Monomial], qmax: i32) -> Result<QSeries, ProductError> {
    Pochhammer::new(a.clone(), bases)?.expand(qmax)
}

pub fn pochhammer_inverse(
    a: &Monomial,
    bases: &[Monomial],
    qmax: i32,
) -> Result<QSeries, ProductError> {
    Pochhammer::new(a.clone(), bases)?.inverse().expand(qmax)
}

/// `Θ_p(z) = (p;p)_∞ (z;p)_∞ (p/z;p)_∞` as a symbolic product.
pub fn theta_factors(z: &Monomial, p: &Monomial) -> Result<QProduct, ProductError> {
    let base = std::slice::from_ref(p);
    Ok(QProduct::new()
        .with(Pochhammer::new(p.clone(), base)?)
        .with(Pochhammer::new(z.clone(), base)?)
        .with(Pochhammer::new(p * &z.recip(), base)?))
}

pub fn theta(z: &Monomial, p: &Monomial, qmax: i32) -> Result<QSeries, ProductError> {
    theta_factors(z, p)?.expand(qmax)
}

#[cfg(test)]
mod tests {
    use super::*;
    use fxxz_exactalg::{int, RPoly};

    fn s(coeffs: &[(i32, i64)], max: i32) -> QSeries {
        QSeries::from_coeffs(coeffs.iter().map(|(e, c)| (*e, RPoly::from_int(*c))), max)
    }

    #[test]
    fn empty_argument_gives_one() {
        let zero = Monomial::q(0).scaled(int(0));
        assert_eq!(pochhammer(&zero, &[Monomial::q(4)], 12).unwrap(), QSeries::one(12));
        assert_eq!(
            pochhammer_inverse(&zero, &[Monomial::q(8)], 12).unwrap(),
            QSeries::one(12)
        );
    }

    #[test]
    fn small_expansions() {
        let p = pochhammer(&Monomial::q(2), &[Monomial::q(4)], 8).unwrap();
        assert_eq!(p, s(&[(0, 1), (2, -1), (6, -1), (8, 1)], 8));
        let chi = pochhammer_inverse(&Monomial::q(2), &[Monomial::q(4)], 6).unwrap();
        assert_eq!(chi, s(&[(0, 1), (2, 1), (4, 1), (6, 2)], 6));
        let chi4 = pochhammer_inverse(&Monomial::q(2), &[Monomial::q(4)], 4).unwrap();
        assert_eq!(chi4, s(&[(0, 1), (2, 1), (4, 1)], 4));
    }

    #[test]
    fn bad_base_rejected() {
        assert!(matches!(
            pochhammer(&Monomial::q(2), &[Monomial::q(0)], 8),
            Err(ProductError::NonPositiveBase(_))
        ));
        assert!(matches!(
            pochhammer(&Monomial::q(2), &[Monomial::qr(2, 1)], 8),
            Err(ProductError::NonPositiveBase(_))
        ));
    }

    #[test]
    fn zero_order_argument_multiplies_exactly() {
        let p = pochhammer(&Monomial::qr(0, -1), &[Monomial::q(4)], 4).unwrap();
        let want = QSeries::from_coeffs(
            [
                (0, RPoly::from_terms([(0, int(1)), (-1, int(-1))])),
                (4, RPoly::from_terms([(-1, int(-1)), (-2, int(1))])),
            ],
            4,
        );
        assert_eq!(p, want);
        assert!(pochhammer_inverse(&Monomial::qr(0, -1), &[Monomial::q(4)], 4).is_err());
    }

    #[test]
    fn theta_has_three_factor_families() {
        let f = theta_factors(&Monomial::qrw(2, 0, &[2]), &Monomial::q(8)).unwrap();
        assert_eq!(f.factors.len(), 3);
        assert_eq!(f.factors[0].arg, Monomial::q(8));
        assert_eq!(f.factors[1].arg, Monomial::qrw(2, 0, &[2]));
        assert_eq!(f.factors[2].arg, Monomial::qrw(6, 0, &[-2]));
        let t = theta(&Monomial::q(3), &Monomial::q(8), 20).unwrap();
        let same = theta(&Monomial::q(5), &Monomial::q(8), 20).unwrap();
        assert_eq!(t, same);
    }
}
