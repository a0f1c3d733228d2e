use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::numeric::pochhammer_c;

pub type Mat = DMatrix<Complex64>;

const SINGULAR_EPS: f64 = 1e-13;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum WeightError {
    #[error("spectral parameter {0} is singular for the R-matrix normalisation")]
    SingularR(Complex64),
    #[error("spectral parameter {0} is singular for the K-matrix (ζ² = r)")]
    SingularK(Complex64),
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

/// Index of `v_{e1} ⊗ v_{e2}` in the basis `++, +-, -+, --`.
pub fn pair_index(e1: i8, e2: i8) -> usize {
    (if e1 < 0 { 2 } else { 0 }) + (if e2 < 0 { 1 } else { 0 })
}

/// `κ(ζ) = ζ (q⁴ζ²;q⁴)(q²ζ⁻²;q⁴) / ((q⁴ζ⁻²;q⁴)(q²ζ²;q⁴))`
pub fn kappa(q: Complex64, zeta: Complex64, tol: f64) -> Complex64 {
    let q2 = q * q;
    let q4 = q2 * q2;
    let z2 = zeta * zeta;
    zeta * pochhammer_c(q4 * z2, q4, tol) * pochhammer_c(q2 / z2, q4, tol)
        / (pochhammer_c(q4 / z2, q4, tol) * pochhammer_c(q2 * z2, q4, tol))
}

/// `φ(z;r) = (q⁴rz;q⁴)(q⁶z²;q⁸) / ((q²rz;q⁴)(q⁸z²;q⁸))`
pub fn phi(q: Complex64, r: Complex64, z: Complex64, tol: f64) -> Complex64 {
    let q2 = q * q;
    let q4 = q2 * q2;
    let q8 = q4 * q4;
    let z2 = z * z;
    pochhammer_c(q4 * r * z, q4, tol) * pochhammer_c(q4 * q2 * z2, q8, tol)
        / (pochhammer_c(q2 * r * z, q4, tol) * pochhammer_c(q8 * z2, q8, tol))
}

/// `f(ζ;r) = φ(ζ⁻²;r) / φ(ζ²;r)`
pub fn f_norm(q: Complex64, r: Complex64, zeta: Complex64, tol: f64) -> Complex64 {
    let z2 = zeta * zeta;
    phi(q, r, one() / z2, tol) / phi(q, r, z2, tol)
}

#[derive(Clone, Debug)]
pub struct RMatrix {
    pub q: Complex64,
    pub zeta: Complex64,
    pub kappa: Complex64,
    pub entries: Mat,
}

impl RMatrix {
    /// `R^{e1,e2}_{f1,f2}`: amplitude of `v_{f1}⊗v_{f2}` in `R(v_{e1}⊗v_{e2})`.
    pub fn component(&self, e1: i8, e2: i8, f1: i8, f2: i8) -> Complex64 {
        self.entries[(pair_index(f1, f2), pair_index(e1, e2))]
    }
}

/// `R(ζ)` with the common factor `1 - q²ζ²` cancelled between the entries and
/// `κ(ζ)`, so the point `ζ² = q⁻²` is regular.
pub fn r_matrix(q: Complex64, zeta: Complex64, tol: f64) -> Result<RMatrix, WeightError> {
    let z2 = zeta * zeta;
    let q2 = q * q;
    let q4 = q2 * q2;
    if zeta.norm() < SINGULAR_EPS {
        return Err(WeightError::SingularR(zeta));
    }
    let reduced = zeta * pochhammer_c(q4 * z2, q4, tol) * pochhammer_c(q2 / z2, q4, tol)
        / (pochhammer_c(q4 / z2, q4, tol) * pochhammer_c(q4 * q2 * z2, q4, tol));
    if !reduced.is_finite() || reduced.norm() < SINGULAR_EPS {
        return Err(WeightError::SingularR(zeta));
    }
    let den = one() - q2 * z2;
    let mut m = Mat::zeros(4, 4);
    m[(0, 0)] = den;
    m[(3, 3)] = den;
    m[(1, 1)] = (one() - z2) * q;
    m[(2, 2)] = (one() - z2) * q;
    m[(1, 2)] = (one() - q2) * zeta;
    m[(2, 1)] = (one() - q2) * zeta;
    Ok(RMatrix {
        q,
        zeta,
        kappa: reduced / den,
        entries: m / reduced,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KVariant {
    Bullet,
    Circle,
}

#[derive(Clone, Debug)]
pub struct KMatrix {
    pub q: Complex64,
    pub r: Complex64,
    pub zeta: Complex64,
    pub variant: KVariant,
    pub f_norm: Complex64,
    pub entries: Mat,
}

/// `K_•(ζ) = K(ζ;r)` and `K_∘(ζ) = K(-q⁻¹ζ⁻¹;r)`.
pub fn k_matrix(
    q: Complex64,
    r: Complex64,
    zeta: Complex64,
    variant: KVariant,
    tol: f64,
) -> Result<KMatrix, WeightError> {
    let x = match variant {
        KVariant::Bullet => zeta,
        KVariant::Circle => -one() / (q * zeta),
    };
    let x2 = x * x;
    if (x2 - r).norm() < SINGULAR_EPS || x.norm() < SINGULAR_EPS {
        return Err(WeightError::SingularK(zeta));
    }
    let f = f_norm(q, r, x, tol);
    let mut m = Mat::zeros(2, 2);
    m[(0, 0)] = (one() - r * x2) / (x2 - r) / f;
    m[(1, 1)] = one() / f;
    Ok(KMatrix {
        q,
        r,
        zeta,
        variant,
        f_norm: f,
        entries: m,
    })
}

/// `K̂^{e'}_{e}(ζ) = K^{-e}_{-e'}(ζ)`; for diagonal K this swaps the entries.
pub fn k_hat(k: &KMatrix) -> Mat {
    let mut m = Mat::zeros(2, 2);
    m[(0, 0)] = k.entries[(1, 1)];
    m[(1, 1)] = k.entries[(0, 0)];
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn identity_points() {
        let r = r_matrix(c(-0.3), c(1.0), 1e-17).unwrap();
        let mut p = Mat::zeros(4, 4);
        p[(0, 0)] = c(1.0);
        p[(1, 2)] = c(1.0);
        p[(2, 1)] = c(1.0);
        p[(3, 3)] = c(1.0);
        assert_eq!(r.kappa, c(1.0));
        assert_eq!(r.entries, p);
        let k = k_matrix(c(-0.3), c(0.4), c(1.0), KVariant::Bullet, 1e-17).unwrap();
        assert_eq!(k.entries, Mat::identity(2, 2));
    }

    #[test]
    fn ice_rule_zeros() {
        let r = r_matrix(c(-0.3), c(0.7), 1e-17).unwrap();
        for (i, j) in [(0, 1), (0, 2), (0, 3), (1, 0), (1, 3), (2, 0), (2, 3), (3, 0), (3, 1), (3, 2)] {
            assert_eq!(r.entries[(i, j)], c(0.0));
        }
    }

    #[test]
    fn circle_is_bullet_at_crossed_point() {
        let (q, r, z) = (c(-0.3), c(0.4), c(0.8));
        let circ = k_matrix(q, r, z, KVariant::Circle, 1e-17).unwrap();
        let bul = k_matrix(q, r, -c(1.0) / (q * z), KVariant::Bullet, 1e-17).unwrap();
        assert!((circ.entries - bul.entries).norm() < 1e-14);
    }

    #[test]
    fn singular_inputs_rejected() {
        let q = c(-0.5);
        assert!(r_matrix(q, c(0.0), 1e-17).is_err());
        // ζ² = q⁴ is a zero of (q⁴ζ⁻²;q⁴)
        assert!(r_matrix(q, c(0.25), 1e-17).is_err());
        assert!(r_matrix(q, c(2.0), 1e-17).is_ok());
        assert!(k_matrix(q, c(0.25), c(0.5), KVariant::Bullet, 1e-17).is_err());
    }
}
