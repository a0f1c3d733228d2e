use std::ops::{Add, Mul, Neg, Sub};

use crate::error::AlgebraError;
use crate::series::QSeries;

/// A series in `q^{1/2}`: the value `q^{odd/2} * body`.
///
/// Exponents are tracked in half units so that products of factors such as
/// `q^{7n/2}` and `q^{n/2}` can be formed exactly; `into_integral` asserts the
/// half-shift has cancelled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfSeries {
    odd: bool,
    body: QSeries,
}

impl HalfSeries {
    pub fn integral(body: QSeries) -> Self {
        Self { odd: false, body }
    }

    /// `q^{half_exp/2} * body`
    pub fn shifted(body: QSeries, half_exp: i32) -> Self {
        let odd = half_exp.rem_euclid(2) == 1;
        let whole = (half_exp - odd as i32) / 2;
        let body = if whole == 0 {
            body
        } else {
            body.mul_term(&crate::series::QrTerm::unit(whole, 0))
        };
        Self { odd, body }
    }

    /// Multiply by `q^{e2/2}`.
    pub fn mul_q_half(&self, e2: i32) -> Self {
        let total = self.odd as i32 + e2;
        let odd = total.rem_euclid(2) == 1;
        let whole = (total - odd as i32) / 2;
        Self {
            odd,
            body: self.body.mul_term(&crate::series::QrTerm::unit(whole, 0)),
        }
    }

    pub fn zero(max_order: i32) -> Self {
        Self::integral(QSeries::zero(max_order))
    }

    pub fn is_half_shifted(&self) -> bool {
        self.odd
    }

    pub fn body(&self) -> &QSeries {
        &self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn into_integral(self) -> Result<QSeries, AlgebraError> {
        if self.odd && !self.body.is_zero() {
            Err(AlgebraError::HalfInteger)
        } else {
            Ok(self.body)
        }
    }

    pub fn scale(&self, s: &QSeries) -> Self {
        Self {
            odd: self.odd,
            body: &self.body * s,
        }
    }

    pub fn truncate(self, max_order: i32) -> Self {
        Self {
            odd: self.odd,
            body: self.body.truncate(max_order),
        }
    }
}

impl<'a> Mul<&'a HalfSeries> for &'a HalfSeries {
    type Output = HalfSeries;
    fn mul(self, rhs: &HalfSeries) -> HalfSeries {
        let prod = &self.body * &rhs.body;
        if self.odd && rhs.odd {
            HalfSeries::integral(prod.mul_term(&crate::series::QrTerm::unit(1, 0)))
        } else {
            HalfSeries {
                odd: self.odd || rhs.odd,
                body: prod,
            }
        }
    }
}

impl<'a> Add<&'a HalfSeries> for &'a HalfSeries {
    type Output = HalfSeries;
    fn add(self, rhs: &HalfSeries) -> HalfSeries {
        if self.is_zero() {
            return HalfSeries {
                odd: rhs.odd,
                body: &self.body + &rhs.body,
            };
        }
        if rhs.is_zero() {
            return HalfSeries {
                odd: self.odd,
                body: &self.body + &rhs.body,
            };
        }
        assert_eq!(
            self.odd, rhs.odd,
            "adding series with incompatible half-integer exponents"
        );
        HalfSeries {
            odd: self.odd,
            body: &self.body + &rhs.body,
        }
    }
}

impl<'a> Sub<&'a HalfSeries> for &'a HalfSeries {
    type Output = HalfSeries;
    fn sub(self, rhs: &HalfSeries) -> HalfSeries {
        self + &(-rhs)
    }
}

impl Neg for &HalfSeries {
    type Output = HalfSeries;
    fn neg(self) -> HalfSeries {
        HalfSeries {
            odd: self.odd,
            body: -&self.body,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rpoly::RPoly;

    #[test]
    fn half_shifts_combine_to_integers() {
        let a = HalfSeries::shifted(QSeries::one(10), 7);
        let b = HalfSeries::shifted(QSeries::one(10), 1);
        assert!(a.is_half_shifted());
        let p = (&a * &b).into_integral().unwrap();
        assert_eq!(p, QSeries::monomial(RPoly::one(), 4, 14));
        assert!(a.mul_q_half(1).into_integral().is_ok());
        assert!(a.into_integral().is_err());
    }
}
