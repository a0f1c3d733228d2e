use fxxz_freefield::Sector;
use num_complex::Complex64;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Inside,
    Outside,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PoleKind {
    /// a single pole from the rational part of the integrand
    Simple,
    /// the lattice `base · ratioⁿ`, `n ≥ 0`, from an infinite product
    Product,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PoleFamily {
    pub base: Complex64,
    pub ratio: Complex64,
    pub side: Side,
    pub kind: PoleKind,
}

impl PoleFamily {
    fn simple(base: Complex64, side: Side) -> Self {
        PoleFamily { base, ratio: Complex64::new(0.0, 0.0), side, kind: PoleKind::Simple }
    }

    fn product(base: Complex64, ratio: Complex64, side: Side) -> Self {
        PoleFamily { base, ratio, side, kind: PoleKind::Product }
    }

    /// Member `n`, or `None` past the end of a simple family.
    pub fn member(&self, n: usize) -> Option<Complex64> {
        match self.kind {
            PoleKind::Simple => (n == 0).then_some(self.base),
            PoleKind::Product => Some(self.base * self.ratio.powi(n as i32)),
        }
    }
}

/// Poles in `w` of the two-site integrand whose single variable sits at
/// position `a` (1-based), for `z_j = ζ_j²`.
pub fn pole_families(sector: Sector, zs: &[Complex64; 2], a: usize, q: Complex64, r: Complex64) -> Vec<PoleFamily> {
    let q2 = q * q;
    let q4 = q2 * q2;
    let q8 = q4 * q4;
    let qi8 = q8.inv();
    let mut out = Vec::new();
    for (j, z) in zs.iter().enumerate() {
        let j = j + 1;
        if j <= a {
            out.push(PoleFamily::simple(q2 * z, Side::Outside));
        }
        if j >= a {
            out.push(PoleFamily::simple(q4 * z, Side::Inside));
        }
    }
    for z in zs {
        out.push(PoleFamily::product(q4 / z, q8, Side::Inside));
        out.push(PoleFamily::product(q8 * q4 * z, q8, Side::Inside));
        out.push(PoleFamily::product((q4 * q2 * z).inv(), qi8, Side::Outside));
        out.push(PoleFamily::product(z / (q4 * q2), qi8, Side::Outside));
    }
    match sector {
        Sector::Zero => {
            out.push(PoleFamily::product(q4 * q2 * r, q8, Side::Inside));
            out.push(PoleFamily::product(r.inv(), qi8, Side::Outside));
        }
        Sector::One => {
            out.push(PoleFamily::product(q2 / r, q8, Side::Inside));
            out.push(PoleFamily::product(r / q4, qi8, Side::Outside));
        }
    }
    out
}
