use fxxz_freefield::Sector;
use fxxz_model::{k_hat, k_matrix, r_matrix, KVariant, Mat};
use nalgebra::DVector;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::NumError;
use crate::residue::{eval_p_numeric, ResidueOptions};

type Vec4 = DVector<Complex64>;

/// `P^{(0)}(ζ₁, ζ₂)` as a vector in the basis `++, +-, -+, --`.
pub fn p_vector(zeta1: Complex64, zeta2: Complex64, q: Complex64, r: Complex64, opts: &ResidueOptions) -> Result<Vec4, NumError> {
    let mut v = Vec4::zeros(4);
    let z = [zeta1, zeta2];
    v[1] = eval_p_numeric(Sector::Zero, z, [1, -1], q, r, opts)?;
    v[2] = eval_p_numeric(Sector::Zero, z, [-1, 1], q, r, opts)?;
    Ok(v)
}

fn on_first(m: &Mat) -> Mat {
    m.kronecker(&Mat::identity(2, 2))
}

fn on_second(m: &Mat) -> Mat {
    Mat::identity(2, 2).kronecker(m)
}

fn permutation() -> Mat {
    let mut p = Mat::zeros(4, 4);
    let one = Complex64::new(1.0, 0.0);
    p[(0, 0)] = one;
    p[(1, 2)] = one;
    p[(2, 1)] = one;
    p[(3, 3)] = one;
    p
}

fn max_abs(v: &Vec4) -> f64 {
    v.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// `P(ζ₂, ζ₁) - P R(ζ₁/ζ₂) P(ζ₁, ζ₂)`, largest component.
pub fn exchange_residual(zeta1: Complex64, zeta2: Complex64, q: Complex64, r: Complex64, opts: &ResidueOptions) -> Result<f64, NumError> {
    let tol = opts.tol;
    let base = p_vector(zeta1, zeta2, q, r, opts)?;
    let swapped = p_vector(zeta2, zeta1, q, r, opts)?;
    let rhs = permutation() * r_matrix(q, zeta1 / zeta2, tol)?.entries * base;
    Ok(max_abs(&(swapped - rhs)))
}

#[derive(Clone, Debug, Serialize)]
pub struct QkzReport {
    pub q: [f64; 2],
    pub r: [f64; 2],
    pub zeta1: [f64; 2],
    pub zeta2: [f64; 2],
    pub tol: f64,
    pub base: Vec<[f64; 2]>,
    pub residual_j1: f64,
    pub residual_j2: f64,
    pub residual_exchange: f64,
}

impl QkzReport {
    pub fn max_residual(&self) -> f64 {
        self.residual_j1.max(self.residual_j2).max(self.residual_exchange)
    }
}

fn parts(z: Complex64) -> [f64; 2] {
    [z.re, z.im]
}

/// Residuals of the level-2 boundary qKZ equations at `i = 0`:
///
/// `P(q⁻⁴ζ₁, ζ₂) = K̂₁(q⁻²ζ₁) R(ζ₁ζ₂) K₁(ζ₁) R(ζ₁/ζ₂) P(ζ₁, ζ₂)`
/// `P(ζ₁, q⁻⁴ζ₂) = R(q⁻⁴ζ₂/ζ₁) K̂₂(q⁻²ζ₂) R(ζ₁ζ₂) K₂(ζ₂) P(ζ₁, ζ₂)`
pub fn qkz_residual(zeta1: Complex64, zeta2: Complex64, q: Complex64, r: Complex64, opts: &ResidueOptions) -> Result<QkzReport, NumError> {
    let tol = opts.tol;
    let q2 = q * q;
    let qi4 = (q2 * q2).inv();
    let k = |z: Complex64| k_matrix(q, r, z, KVariant::Bullet, tol);
    let rm = |z: Complex64| r_matrix(q, z, tol).map(|m| m.entries);
    let base = p_vector(zeta1, zeta2, q, r, opts)?;

    let lhs1 = p_vector(qi4 * zeta1, zeta2, q, r, opts)?;
    let rhs1 = on_first(&k_hat(&k(zeta1 / q2)?))
        * rm(zeta1 * zeta2)?
        * on_first(&k(zeta1)?.entries)
        * rm(zeta1 / zeta2)?
        * &base;
    let lhs2 = p_vector(zeta1, qi4 * zeta2, q, r, opts)?;
    let rhs2 = rm(qi4 * zeta2 / zeta1)?
        * on_second(&k_hat(&k(zeta2 / q2)?))
        * rm(zeta1 * zeta2)?
        * on_second(&k(zeta2)?.entries)
        * &base;
    let swapped = p_vector(zeta2, zeta1, q, r, opts)?;
    let rhs3 = permutation() * rm(zeta1 / zeta2)? * &base;

    Ok(QkzReport {
        q: parts(q),
        r: parts(r),
        zeta1: parts(zeta1),
        zeta2: parts(zeta2),
        tol,
        base: base.iter().copied().map(parts).collect(),
        residual_j1: max_abs(&(lhs1 - rhs1)),
        residual_j2: max_abs(&(lhs2 - rhs2)),
        residual_exchange: max_abs(&(swapped - rhs3)),
    })
}
