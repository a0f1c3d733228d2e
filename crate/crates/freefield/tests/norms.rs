use fxxz_exactalg::{QSeries, QrTerm};
use fxxz_freefield::{
    norm_bracket_closed, norm_bracket_expsum, overlap_closed, overlap_series, Sector,
};
use fxxz_qprod::{Monomial, Pochhammer, QProduct};

const ORDER: i32 = 48;

#[test]
fn exponential_sums_match_products() {
    for sector in [Sector::Zero, Sector::One] {
        for primed in [false, true] {
            let a = norm_bracket_expsum(sector, primed, ORDER).unwrap();
            let b = norm_bracket_closed(sector, primed, ORDER).unwrap();
            assert_eq!(a.max_order(), ORDER);
            assert_eq!(a, b, "sector {sector:?}, primed {primed}");
        }
    }
}

#[test]
fn sector_one_is_sector_zero_with_inverted_r() {
    for primed in [false, true] {
        let a = norm_bracket_expsum(Sector::Zero, primed, 24).unwrap();
        let b = norm_bracket_expsum(Sector::One, primed, 24).unwrap();
        assert_eq!(a.invert_r(), b);
    }
}

#[test]
fn mode_cutoff_is_stable() {
    for sector in [Sector::Zero, Sector::One] {
        let a = norm_bracket_expsum(sector, true, 24).unwrap();
        let b = norm_bracket_expsum(sector, true, 32).unwrap();
        assert!(a.agrees_with(&b));
    }
}

#[test]
fn overlap_matches_closed_form_and_is_even_in_r() {
    for sector in [Sector::Zero, Sector::One] {
        let a = overlap_series(sector, ORDER).unwrap();
        let b = overlap_closed(sector, ORDER).unwrap();
        assert_eq!(a, b);
        for (e, c) in a.iter() {
            assert_eq!(e % 2, 0, "odd q-power");
            assert!(c.terms().all(|(k, _)| k % 2 == 0), "odd r-power at q^{e}");
        }
    }
    let zero = overlap_series(Sector::Zero, 20).unwrap();
    let one = overlap_series(Sector::One, 20).unwrap();
    assert_eq!(zero.invert_r(), one);
}

#[test]
fn overlap_at_r_zero() {
    let a = overlap_series(Sector::Zero, 32)
        .unwrap()
        .substitute_r(&fxxz_exactalg::rat(0, 1))
        .unwrap();
    let rest = QProduct::new()
        .with(Pochhammer::q_bases(Monomial::q(6), &[8, 8]))
        .with(Pochhammer::q_bases(Monomial::q(10), &[8, 8]).inverse())
        .expand(32)
        .unwrap();
    let chi = Pochhammer::q_bases(Monomial::q(2), &[4]).expand(32).unwrap();
    let want = &chi.sqrt().unwrap() * &rest;
    assert_eq!(a, want);
}

#[test]
fn overlap_square_identity() {
    // overlap² · ⟨i|i⟩² · χ = ⟨i|(-q)^D|i⟩²
    let order = 32;
    let o = overlap_series(Sector::Zero, order).unwrap();
    let plain = norm_bracket_expsum(Sector::Zero, false, order).unwrap();
    let primed = norm_bracket_expsum(Sector::Zero, true, order).unwrap();
    let mut chi = QSeries::one(order);
    for m in 0.. {
        let e = 2 + 4 * m;
        if e > order {
            break;
        }
        chi = chi.div_one_minus(&QrTerm::unit(e, 0)).unwrap();
    }
    let lhs = &(&(&o * &o) * &(&plain * &plain)) * &chi;
    assert!(lhs.agrees_with(&(&primed * &primed)));
}
