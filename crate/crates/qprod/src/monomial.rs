use std::fmt;
use std::ops::Mul;

use fxxz_exactalg::wlaurent::{key_add, key_scale, wkey};
use fxxz_exactalg::{int, BigRational, QrTerm, WKey, WTerm};
use num_traits::{One, Zero};

/// `c · q^{q2/2} · r^r · w^w`. The q-exponent is stored in half units.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub c: BigRational,
    pub q2: i32,
    pub r: i32,
    pub w: WKey,
}

impl Monomial {
    pub fn new(c: BigRational, q2: i32, r: i32, w: WKey) -> Self {
        Self { c, q2, r, w }
    }

    pub fn one() -> Self {
        Self::q(0)
    }

    /// `q^e`
    pub fn q(e: i32) -> Self {
        Self::new(BigRational::one(), 2 * e, 0, [0; fxxz_exactalg::MAX_W])
    }

    /// `q^{e2/2}`
    pub fn q_half(e2: i32) -> Self {
        Self::new(BigRational::one(), e2, 0, [0; fxxz_exactalg::MAX_W])
    }

    /// `q^e r^k`
    pub fn qr(e: i32, k: i32) -> Self {
        Self::new(BigRational::one(), 2 * e, k, [0; fxxz_exactalg::MAX_W])
    }

    /// `q^e r^k w^w`
    pub fn qrw(e: i32, k: i32, w: &[i32]) -> Self {
        Self::new(BigRational::one(), 2 * e, k, wkey(w))
    }

    pub fn scaled(mut self, c: BigRational) -> Self {
        self.c *= c;
        self
    }

    pub fn signed(self, s: i64) -> Self {
        self.scaled(int(s))
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero()
    }

    pub fn has_w(&self) -> bool {
        self.w.iter().any(|k| *k != 0)
    }

    /// The integral q-exponent, if there is one.
    pub fn q_exp(&self) -> Option<i32> {
        (self.q2 % 2 == 0).then_some(self.q2 / 2)
    }

    pub fn is_pure_q_power(&self) -> bool {
        self.c.is_one() && self.r == 0 && !self.has_w()
    }

    pub fn pow(&self, n: i32) -> Self {
        let c = if n >= 0 {
            num_traits::pow(self.c.clone(), n as usize)
        } else {
            num_traits::pow(self.c.recip(), (-n) as usize)
        };
        Self::new(c, self.q2 * n, self.r * n, key_scale(&self.w, n))
    }

    pub fn recip(&self) -> Self {
        self.pow(-1)
    }

    pub fn to_qr(&self) -> Option<QrTerm> {
        if self.has_w() {
            return None;
        }
        Some(QrTerm::new(self.c.clone(), self.q_exp()?, self.r))
    }

    pub fn to_wterm(&self) -> Option<WTerm> {
        Some(WTerm::new(self.c.clone(), self.q_exp()?, self.r, self.w))
    }
}

impl Mul for &Monomial {
    type Output = Monomial;
    fn mul(self, o: &Monomial) -> Monomial {
        Monomial::new(
            &self.c * &o.c,
            self.q2 + o.q2,
            self.r + o.r,
            key_add(&self.w, &o.w),
        )
    }
}

impl Mul for Monomial {
    type Output = Monomial;
    fn mul(self, o: Monomial) -> Monomial {
        &self * &o
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.c.is_one() {
            write!(f, "({})", self.c)?;
        }
        let mut parts = Vec::new();
        if self.q2 != 0 {
            if self.q2 % 2 == 0 {
                parts.push(format!("q^{}", self.q2 / 2));
            } else {
                parts.push(format!("q^({}/2)", self.q2));
            }
        }
        if self.r != 0 {
            parts.push(format!("r^{}", self.r));
        }
        for (i, k) in self.w.iter().enumerate() {
            if *k != 0 {
                parts.push(format!("w{}^{}", i + 1, k));
            }
        }
        if parts.is_empty() && self.c.is_one() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}
