use std::f64::consts::PI;

use fxxz_freefield::Sector;
use fxxz_model::{pochhammer_c, DEFAULT_PRODUCT_TOL};
use num_complex::Complex64;

use crate::error::NumError;
use crate::logprod::{lpoch, lpoch2};
use crate::poles::{pole_families, Side};

/// Poles closer than this (relative) are treated as one higher-order pole.
const SAME_POLE: f64 = 1e-10;
/// Poles below this modulus are not generated.
const TINY: f64 = 1e-280;

#[derive(Clone, Copy, Debug)]
pub struct ResidueOptions {
    /// product cutoff and target for the residue tail
    pub tol: f64,
    /// number of members taken from each product family
    pub n_max: usize,
    /// quadrature points on the small circle around each pole
    pub circle_points: usize,
}

impl Default for ResidueOptions {
    fn default() -> Self {
        ResidueOptions { tol: 1e-13, n_max: 40, circle_points: 48 }
    }
}

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `g = (q²;q⁴)_∞ / (q⁴;q⁴)_∞`
pub fn g_numeric(q: Complex64) -> Complex64 {
    let q2 = q * q;
    let q4 = q2 * q2;
    pochhammer_c(q2, q4, DEFAULT_PRODUCT_TOL) / pochhammer_c(q4, q4, DEFAULT_PRODUCT_TOL)
}

/// The w-free product part of the integrand.
fn zpart_log(sector: Sector, zs: &[Complex64; 2], q: Complex64, r: Complex64, tol: f64) -> Complex64 {
    let qp = |k: i32| q.powi(k);
    let (q4, q8) = (qp(4), qp(8));
    let p2 = |a: Complex64, b1: Complex64, b2: Complex64| lpoch2(a, b1, b2, tol);
    let mut v = c(0.0);
    let (z1, z2) = (zs[0], zs[1]);
    v += p2(qp(10) * z1 * z2, q4, q8) - p2(qp(12) * z1 * z2, q4, q8);
    v += p2(qp(2) / (z1 * z2), q4, q8) - p2(q4 / (z1 * z2), q4, q8);
    for zj in zs {
        for zk in zs {
            v += p2(qp(10) * zj / zk, q4, q8) - p2(qp(12) * zj / zk, q4, q8);
        }
    }
    for zj in zs {
        let z2 = zj * zj;
        v += p2(qp(14) * z2, q8, q8) - p2(qp(16) * z2, q8, q8);
        v += p2(qp(6) / z2, q8, q8) - p2(q8 / z2, q8, q8);
    }
    for zj in zs {
        match sector {
            Sector::Zero => {
                v += p2(q4 * r * zj, q4, q8) + p2(qp(12) * r * zj, q4, q8) - p2(qp(6) * r * zj, q4, q4);
                v += 2.0 * p2(q4 * r / zj, q4, q8) - p2(qp(2) * r / zj, q4, q4);
            }
            Sector::One => {
                let rz = r * zj;
                v += p2(rz.inv(), q4, q8) + p2(q8 / rz, q4, q8) - p2(qp(2) / rz, q4, q4);
                v += 2.0 * p2(q8 * zj / r, q4, q8) - p2(qp(6) * zj / r, q4, q4);
            }
        }
    }
    v
}

/// The w-dependent product part of the integrand for a single variable.
fn wpart_log(sector: Sector, zs: &[Complex64; 2], w: Complex64, q: Complex64, r: Complex64, tol: f64) -> Complex64 {
    let qp = |k: i32| q.powi(k);
    let q8 = qp(8);
    let p = |a: Complex64| lpoch(a, q8, tol);
    let mut v = c(0.0);
    for zj in zs {
        v -= p(qp(6) * zj * w) + p(qp(4) / (zj * w)) + p(qp(12) * zj / w) + p(qp(6) * w / zj);
    }
    v += p(qp(2) * w * w) + p(qp(6) / (w * w));
    v += p(q8) + p(qp(10));
    match sector {
        Sector::Zero => v += p(qp(6) * r * w) + p(qp(4) * r / w) - p(r * w) - p(qp(6) * r / w),
        Sector::One => v += p(qp(2) * w / r) + p(q8 / (r * w)) - p(qp(4) * w / r) - p(qp(2) / (r * w)),
    }
    v
}

struct Pole {
    at: Complex64,
    side: Side,
    member: usize,
}

fn rel_dist(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm())
}

/// `P^{(i)}_{ε₁ε₂}(ζ₁, ζ₂)` by summing residues at the enclosed poles.
pub fn eval_p_numeric(
    sector: Sector,
    zeta: [Complex64; 2],
    eps: [i8; 2],
    q: Complex64,
    r: Complex64,
    opts: &ResidueOptions,
) -> Result<Complex64, NumError> {
    if !(q.norm() > 0.0 && q.norm() <= 0.5) {
        return Err(NumError::QOutOfRange(q.norm()));
    }
    let a = match eps {
        [1, -1] => 1,
        [-1, 1] => 2,
        _ => return Ok(c(0.0)),
    };
    let i = match sector {
        Sector::Zero => 0,
        Sector::One => 1,
    };
    let tol = opts.tol;
    let zs = [zeta[0] * zeta[0], zeta[1] * zeta[1]];
    let q2 = q * q;
    let q4 = q2 * q2;

    // prefactor, N = 2
    let mut pref = (-q2 * q).powi(1 + i - a as i32) * (c(1.0) - q2);
    pref *= zeta[0].powi((1 + eps[0] as i32) / 2 + 1 + i) * zeta[1].powi((1 + eps[1] as i32) / 2 + i);
    let ratio = zs[1] / zs[0];
    let log_pref = lpoch(q2 * ratio, q4, tol) - lpoch(q4 * ratio, q4, tol) + zpart_log(sector, &zs, q, r, tol);

    let integrand = |w: Complex64| -> Result<Complex64, NumError> {
        let mut l = (1 - i) as f64 * w.ln();
        for (j, z) in zs.iter().enumerate() {
            if j < a {
                l -= (z - w / q2).ln();
            }
            if j + 1 >= a {
                l -= (w - q4 * z).ln();
            }
        }
        let v = (l + wpart_log(sector, &zs, w, q, r, tol) + log_pref).exp();
        if v.is_finite() {
            Ok(v)
        } else {
            Err(NumError::NonFinite(w))
        }
    };

    let mut poles = Vec::new();
    for fam in pole_families(sector, &zs, a, q, r) {
        for n in 0..=opts.n_max + 1 {
            let Some(at) = fam.member(n) else { break };
            if at.norm() < TINY || !at.is_finite() {
                break;
            }
            poles.push(Pole { at, side: fam.side, member: n });
        }
    }

    // enclosed clusters, keyed by the smallest family member in them
    let near = tol.sqrt();
    let mut clusters: Vec<(Complex64, usize, f64)> = Vec::new();
    for (k, p) in poles.iter().enumerate() {
        if p.side != Side::Inside || p.member > opts.n_max {
            continue;
        }
        if let Some(cl) = clusters.iter_mut().find(|cl| rel_dist(cl.0, p.at) < SAME_POLE) {
            cl.1 = cl.1.min(p.member);
            continue;
        }
        let mut nearest = f64::INFINITY;
        for (l, o) in poles.iter().enumerate() {
            if l == k {
                continue;
            }
            let d = rel_dist(p.at, o.at);
            if d < SAME_POLE {
                if o.side == Side::Outside {
                    return Err(NumError::PoleCollision { a: p.at, b: o.at });
                }
                continue;
            }
            if d < near {
                return Err(NumError::PoleCollision { a: p.at, b: o.at });
            }
            nearest = nearest.min((p.at - o.at).norm());
        }
        clusters.push((p.at, p.member, 0.4 * nearest));
    }

    let m = opts.circle_points;
    let residue = |at: Complex64, rad: f64| -> Result<Complex64, NumError> {
        let mut s = c(0.0);
        for k in 0..m {
            let e = Complex64::from_polar(1.0, 2.0 * PI * k as f64 / m as f64);
            s += integrand(at + rad * e)? * rad * e;
        }
        Ok(s / m as f64)
    };
    let mut sum = c(0.0);
    let mut prev = f64::INFINITY;
    for n in 0..=opts.n_max {
        let mut t = c(0.0);
        for (at, _, rad) in clusters.iter().filter(|cl| cl.1 == n) {
            t += residue(*at, *rad)?;
        }
        sum += t;
        let here = t.norm();
        if n >= 1 && here.max(prev) < tol * sum.norm().max(1.0) {
            return Ok(pref * sum);
        }
        prev = here;
    }
    Err(NumError::NoConvergence { n_max: opts.n_max, tail: prev })
}
