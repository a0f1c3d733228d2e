use fxxz_correlator::{component, g_factor, residue_identity, Component, Mode, Path};
use fxxz_exactalg::{int, QSeries, QrTerm, RPoly};
use fxxz_freefield::Sector;

/// `(1-r) Σ_{n>=0} (-q²)^n / (1 - r q^{4n})`, computed term by term.
fn closed_plus_minus(qmax: i32) -> QSeries {
    let mut s = QSeries::zero(qmax);
    let one_minus_r = RPoly::from_terms([(0, int(1)), (1, int(-1))]);
    let mut n = 0;
    while 2 * n <= qmax {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let t = QSeries::monomial(one_minus_r.scale(&int(sign)), 2 * n, qmax);
        let t = if n == 0 {
            // (1-r)/(1-r) = 1
            QSeries::one(qmax)
        } else {
            t.div_one_minus(&QrTerm::unit(4 * n, 1)).unwrap()
        };
        s = &s + &t;
        n += 1;
    }
    s
}

#[test]
fn plus_minus_matches_closed_form() {
    let q = 16;
    let g = g_factor(q).unwrap();
    let p = component(Sector::Zero, Component::PlusMinus, Mode::Fracture, Path::Product, q).unwrap();
    assert_eq!(&g * &p, closed_plus_minus(q));
}

#[test]
fn components_sum_to_one() {
    let q = 16;
    let g = g_factor(q).unwrap();
    let a = component(Sector::Zero, Component::PlusMinus, Mode::Fracture, Path::Product, q).unwrap();
    let b = component(Sector::Zero, Component::MinusPlus, Mode::Fracture, Path::Product, q).unwrap();
    assert_eq!(&g * &(&a + &b), QSeries::one(q));
    for sector in [Sector::Zero, Sector::One] {
        let r = residue_identity(sector, Mode::Fracture, Path::Product, q).unwrap();
        assert_eq!(r, QSeries::one(q), "{sector:?}");
    }
}

#[test]
fn exponential_sum_agrees_with_product() {
    let q = 14;
    for (sector, comp) in [
        (Sector::Zero, Component::PlusMinus),
        (Sector::Zero, Component::MinusPlus),
        (Sector::One, Component::PlusMinus),
    ] {
        let p = component(sector, comp, Mode::Fracture, Path::Product, q).unwrap();
        let e = component(sector, comp, Mode::Fracture, Path::ExpSum, q).unwrap();
        assert_eq!(p, e, "{sector:?} {comp:?}");
    }
    for sector in [Sector::Zero, Sector::One] {
        let e = residue_identity(sector, Mode::Fracture, Path::ExpSum, q).unwrap();
        assert_eq!(e, QSeries::one(q), "{sector:?}");
    }
}

#[test]
fn boundary_residue_is_one() {
    for sector in [Sector::Zero, Sector::One] {
        let e = residue_identity(sector, Mode::Boundary, Path::ExpSum, 14).unwrap();
        assert_eq!(e, QSeries::one(14), "{sector:?}");
    }
}

#[test]
fn coinciding_pole_orders_are_reported() {
    use fxxz_correlator::CorrelatorError;
    let e = component(Sector::One, Component::MinusPlus, Mode::Fracture, Path::Product, 8);
    assert!(matches!(e, Err(CorrelatorError::ContourNotSeparable { .. })));
    let e = component(Sector::Zero, Component::PlusMinus, Mode::Boundary, Path::ExpSum, 8);
    assert!(matches!(e, Err(CorrelatorError::ContourNotSeparable { .. })));
}

#[test]
fn cutoff_does_not_change_lower_orders() {
    let a = component(Sector::Zero, Component::MinusPlus, Mode::Fracture, Path::Product, 20).unwrap();
    let b = component(Sector::Zero, Component::MinusPlus, Mode::Fracture, Path::Product, 28).unwrap();
    assert!(b.agrees_with(&a));
    assert_eq!(b.truncate(20), a);
}
