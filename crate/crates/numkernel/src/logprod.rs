//! Logarithms of infinite products, so that factors of very different size
//! can be combined before exponentiating.

use num_complex::Complex64;

const MAX_FACTORS: usize = 100_000;

/// `log (a; b)_∞` up to a multiple of `2πi`, dropping factors with `|x| < tol`.
pub fn lpoch(a: Complex64, b: Complex64, tol: f64) -> Complex64 {
    assert!(b.norm() < 1.0, "pochhammer base must satisfy |b| < 1");
    let one = Complex64::new(1.0, 0.0);
    let mut s = Complex64::new(0.0, 0.0);
    let mut x = a;
    for _ in 0..MAX_FACTORS {
        if x.norm() < tol {
            break;
        }
        s += (one - x).ln();
        x *= b;
    }
    s
}

/// `log (a; b1, b2)_∞`
pub fn lpoch2(a: Complex64, b1: Complex64, b2: Complex64, tol: f64) -> Complex64 {
    assert!(b1.norm() < 1.0, "pochhammer base must satisfy |b| < 1");
    let mut s = Complex64::new(0.0, 0.0);
    let mut x = a;
    for _ in 0..MAX_FACTORS {
        if x.norm() < tol {
            break;
        }
        s += lpoch(x, b2, tol);
        x *= b1;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use fxxz_model::pochhammer_c;

    #[test]
    fn agrees_with_direct_product() {
        let a = Complex64::new(0.3, -0.2);
        let b = Complex64::new(-0.4, 0.1);
        let direct = pochhammer_c(a, b, 1e-17);
        assert!((lpoch(a, b, 1e-17).exp() - direct).norm() < 1e-14);
    }
}
