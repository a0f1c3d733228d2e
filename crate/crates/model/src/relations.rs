use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::weights::{k_matrix, r_matrix, KVariant, Mat, WeightError};

/// Max-abs residuals of the bulk and boundary relations at one parameter point.
#[derive(Clone, Debug, Serialize)]
pub struct RelationResiduals {
    pub q: f64,
    pub r: f64,
    pub zeta1: f64,
    pub zeta2: f64,
    pub yang_baxter: f64,
    pub crossing: f64,
    pub unitarity: f64,
    pub boundary_yang_baxter: f64,
}

impl RelationResiduals {
    pub fn max(&self) -> f64 {
        self.yang_baxter
            .max(self.crossing)
            .max(self.unitarity)
            .max(self.boundary_yang_baxter)
    }
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn max_abs(m: &Mat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn swap4() -> Mat {
    let mut p = Mat::zeros(4, 4);
    p[(0, 0)] = c(1.0);
    p[(1, 2)] = c(1.0);
    p[(2, 1)] = c(1.0);
    p[(3, 3)] = c(1.0);
    p
}

/// Embed a two-site operator acting on sites `(a, b)` of three.
fn embed3(m: &Mat, a: usize, b: usize) -> Mat {
    let mut out = Mat::zeros(8, 8);
    for col in 0..8 {
        let bits = [(col >> 2) & 1, (col >> 1) & 1, col & 1];
        let c_in = bits[a] * 2 + bits[b];
        for r_out in 0..4 {
            let v = m[(r_out, c_in)];
            if v == c(0.0) {
                continue;
            }
            let mut nb = bits;
            nb[a] = r_out >> 1;
            nb[b] = r_out & 1;
            let row = (nb[0] << 2) | (nb[1] << 1) | nb[2];
            out[(row, col)] += v;
        }
    }
    out
}

fn kron(a: &Mat, b: &Mat) -> Mat {
    a.kronecker(b)
}

fn crossing_residual(q: f64, zeta: f64, tol: f64) -> Result<f64, WeightError> {
    let a = r_matrix(c(q), c(zeta), tol)?;
    let b = r_matrix(c(q), c(-1.0 / (q * zeta)), tol)?;
    let signs = [1i8, -1];
    let mut worst: f64 = 0.0;
    for &e1 in &signs {
        for &e2 in &signs {
            for &f1 in &signs {
                for &f2 in &signs {
                    let lhs = a.component(e1, e2, f1, f2);
                    let x = b.component(-f2, e1, -e2, f1);
                    let y = b.component(e2, -f1, f2, -e1);
                    worst = worst.max((lhs - x).norm()).max((lhs - y).norm());
                }
            }
        }
    }
    Ok(worst)
}

pub fn relation_residuals(
    q: f64,
    r: f64,
    zeta1: f64,
    zeta2: f64,
    tol: f64,
) -> Result<RelationResiduals, WeightError> {
    let cq = c(q);
    let zeta3 = (zeta1 * zeta2).sqrt() * 0.9;
    let rm = |z: f64| r_matrix(cq, c(z), tol).map(|m| m.entries);
    let p = swap4();

    let r12 = embed3(&rm(zeta1 / zeta2)?, 0, 1);
    let r13 = embed3(&rm(zeta1 / zeta3)?, 0, 2);
    let r23 = embed3(&rm(zeta2 / zeta3)?, 1, 2);
    let yang_baxter = max_abs(&(&r12 * &r13 * &r23 - &r23 * &r13 * &r12));

    let crossing = crossing_residual(q, zeta1, tol)?.max(crossing_residual(q, zeta2, tol)?);

    let u = rm(zeta1 / zeta2)? * (&p * rm(zeta2 / zeta1)? * &p);
    let scale = u[(0, 0)];
    let unitarity = max_abs(&(&u - Mat::identity(4, 4) * scale));

    let k1 = k_matrix(cq, c(r), c(zeta1), KVariant::Bullet, tol)?.entries;
    let k2 = k_matrix(cq, c(r), c(zeta2), KVariant::Bullet, tol)?.entries;
    let id2: Mat = DMatrix::identity(2, 2);
    let k1e = kron(&k1, &id2);
    let k2e = kron(&id2, &k2);
    let rminus = rm(zeta1 / zeta2)?;
    let rplus = rm(zeta1 * zeta2)?;
    let rminus21 = &p * &rminus * &p;
    let rplus21 = &p * &rplus * &p;
    let lhs = &k2e * &rplus21 * &k1e * &rminus;
    let rhs = &rminus21 * &k1e * &rplus * &k2e;
    let boundary_yang_baxter = max_abs(&(lhs - rhs));

    Ok(RelationResiduals {
        q,
        r,
        zeta1,
        zeta2,
        yang_baxter,
        crossing,
        unitarity,
        boundary_yang_baxter,
    })
}
