use fxxz_freefield::Sector;
use fxxz_magnet::magnetisation_series;
use fxxz_numkernel::{eval_p_numeric, g_numeric, NumError, ResidueOptions};
use num_complex::Complex64;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn components(zeta: [Complex64; 2], q: f64, r: f64, opts: &ResidueOptions) -> (Complex64, Complex64) {
    let pm = eval_p_numeric(Sector::Zero, zeta, [1, -1], c(q), c(r), opts).unwrap();
    let mp = eval_p_numeric(Sector::Zero, zeta, [-1, 1], c(q), c(r), opts).unwrap();
    (pm, mp)
}

#[test]
fn specialised_values_match_the_exact_series() {
    let opts = ResidueOptions::default();
    let series = magnetisation_series(Sector::Zero, 48).unwrap();
    for (q, r) in [(-0.3, 0.4), (-0.25, -0.5), (-0.4, 0.8)] {
        let (pm, mp) = components([c(-1.0 / q), c(1.0)], q, r, &opts);
        let g = g_numeric(c(q));
        let (exact, tail) = series.eval(q, r);
        assert!(tail < 1e-12);
        assert!((g * (pm - mp) - exact).norm() < 1e-8, "q={q} r={r}");
        assert!((g * (pm + mp) - 1.0).norm() < 1e-10, "q={q} r={r}");
    }
}

#[test]
fn doubling_the_family_cutoff_changes_nothing() {
    let zeta = [c(0.85), c(1.15)];
    let a = ResidueOptions { n_max: 20, ..ResidueOptions::default() };
    let b = ResidueOptions { n_max: 40, ..ResidueOptions::default() };
    let (pa, ma) = components(zeta, -0.35, 0.3, &a);
    let (pb, mb) = components(zeta, -0.35, 0.3, &b);
    assert!((pa - pb).norm() < 1e-12 && (ma - mb).norm() < 1e-12);
}

#[test]
fn real_parameters_give_real_values() {
    let (pm, mp) = components([c(0.9), c(1.1)], -0.3, 0.4, &ResidueOptions::default());
    assert!(pm.im.abs() < 1e-12 && mp.im.abs() < 1e-12);
}

#[test]
fn complex_parameters_conjugate() {
    let opts = ResidueOptions::default();
    let z = [Complex64::new(0.9, 0.1), Complex64::new(1.1, -0.05)];
    let q = Complex64::new(-0.3, 0.02);
    let r = Complex64::new(0.4, 0.1);
    let v = eval_p_numeric(Sector::Zero, z, [1, -1], q, r, &opts).unwrap();
    let zc = [z[0].conj(), z[1].conj()];
    let w = eval_p_numeric(Sector::Zero, zc, [1, -1], q.conj(), r.conj(), &opts).unwrap();
    assert!((v.conj() - w).norm() < 1e-12 * v.norm().max(1.0));
}

#[test]
fn ice_rule_components_vanish() {
    let opts = ResidueOptions::default();
    let z = [c(0.9), c(1.1)];
    for eps in [[1, 1], [-1, -1]] {
        assert_eq!(eval_p_numeric(Sector::Zero, z, eps, c(-0.3), c(0.4), &opts).unwrap(), c(0.0));
    }
}

#[test]
fn pinched_contours_are_rejected() {
    let opts = ResidueOptions::default();
    // z₁ = q²z₂ puts the outside pole q²z₁ on the inside pole q⁴z₂
    let q: f64 = -0.3;
    let err = eval_p_numeric(Sector::Zero, [c(q.abs()), c(1.0)], [-1, 1], c(q), c(0.4), &opts);
    assert!(matches!(err, Err(NumError::PoleCollision { .. })), "{err:?}");
    let far = eval_p_numeric(Sector::Zero, [c(0.9), c(1.1)], [-1, 1], c(-0.7), c(0.4), &opts);
    assert!(matches!(far, Err(NumError::QOutOfRange(_))));
}
