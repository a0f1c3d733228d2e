use fxxz_exactalg::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

/// A field strength, with `r = 1` mapped to an infinite sentinel.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Field {
    Finite(f64),
    Infinite,
}

impl Field {
    pub fn value(self) -> f64 {
        match self {
            Field::Finite(h) => h,
            Field::Infinite => f64::INFINITY,
        }
    }
}

/// `q` in `(-1, 0)` with `Δ = (q + 1/q)/2`, for `Δ < -1`.
pub fn delta_to_q(delta: f64) -> f64 {
    assert!(delta < -1.0, "massive antiferromagnetic regime requires Δ < -1");
    delta + (delta * delta - 1.0).sqrt()
}

pub fn h_inv(q: f64) -> f64 {
    (q * q - 1.0) / (4.0 * q)
}

pub fn h_inv_exact(q: &BigRational) -> BigRational {
    (q * q - BigRational::one()) / (BigRational::from_integer(4.into()) * q)
}

pub fn field_map(q: f64, r: f64) -> Field {
    if r == 1.0 {
        Field::Infinite
    } else {
        Field::Finite(h_inv(q) * (1.0 + r) / (1.0 - r))
    }
}

/// Exact `h(r)`; `None` at `r = 1`.
pub fn field_map_exact(q: &BigRational, r: &BigRational) -> Option<BigRational> {
    let one = BigRational::one();
    let den = &one - r;
    if den.is_zero() {
        return None;
    }
    Some(h_inv_exact(q) * (&one + r) / den)
}

/// `r(h)` for `h >= 0`, landing in `[-1, 1)`; `Field::Infinite` gives 1.
pub fn field_map_inv(q: f64, h: Field) -> f64 {
    match h {
        Field::Infinite => 1.0,
        Field::Finite(h) => {
            let hi = h_inv(q);
            (h - hi) / (h + hi)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn special_points() {
        let q = -0.3;
        assert_eq!(field_map(q, -1.0), Field::Finite(0.0));
        assert!((field_map(q, 0.0).value() - h_inv(q)).abs() < 1e-15);
        assert_eq!(field_map(q, 1.0), Field::Infinite);
        assert_eq!(field_map_inv(q, Field::Infinite), 1.0);
    }

    #[test]
    fn roundtrip_and_involution() {
        let q = delta_to_q(-2.0);
        assert!((q - (-2.0 + 3f64.sqrt())).abs() < 1e-15);
        for r in [-0.9, -0.5, 0.0, 0.5, 0.9] {
            let h = field_map(q, r);
            assert!((field_map_inv(q, h) - r).abs() < 1e-14);
            let prod = h.value() * field_map(q, -r).value();
            assert!((prod - h_inv(q).powi(2)).abs() < 1e-12);
        }
    }

    #[test]
    fn exact_involution() {
        let q = BigRational::new((-3).into(), 10.into());
        let hi = h_inv_exact(&q);
        for (n, d) in [(-1, 2), (1, 3), (0, 1), (7, 9)] {
            let r = BigRational::new(n.into(), d.into());
            let a = field_map_exact(&q, &r).unwrap();
            let b = field_map_exact(&q, &-r.clone()).unwrap();
            assert_eq!(a * b, &hi * &hi);
        }
        assert!(field_map_exact(&q, &BigRational::one()).is_none());
    }
}
