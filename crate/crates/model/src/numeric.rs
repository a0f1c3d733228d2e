use num_complex::Complex64;

pub const DEFAULT_PRODUCT_TOL: f64 = 1e-17;

const MAX_FACTORS: usize = 100_000;

/// `(a; b)_∞` with factors dropped once `|a b^n| < tol`.
pub fn pochhammer_c(a: Complex64, b: Complex64, tol: f64) -> Complex64 {
    assert!(b.norm() < 1.0, "pochhammer base must satisfy |b| < 1");
    let mut p = Complex64::new(1.0, 0.0);
    let mut x = a;
    for _ in 0..MAX_FACTORS {
        if x.norm() < tol {
            break;
        }
        p *= Complex64::new(1.0, 0.0) - x;
        x *= b;
    }
    p
}

/// `(a; b1, b2)_∞`
pub fn pochhammer2_c(a: Complex64, b1: Complex64, b2: Complex64, tol: f64) -> Complex64 {
    assert!(b1.norm() < 1.0, "pochhammer base must satisfy |b| < 1");
    let mut p = Complex64::new(1.0, 0.0);
    let mut x = a;
    for _ in 0..MAX_FACTORS {
        if x.norm() < tol {
            break;
        }
        p *= pochhammer_c(x, b2, tol);
        x *= b1;
    }
    p
}

pub fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}
