use fxxz_exactalg::{int, QSeries};
use fxxz_qprod::{pochhammer, pochhammer_inverse, Monomial, Pochhammer, QProduct};
use proptest::prelude::*;

const QMAX: i32 = 30;

fn arg(c: i64, e: i32, k: i32) -> Monomial {
    Monomial::qr(e, k).scaled(int(c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn double_base_splits(c in -2i64..=2, e in 1i32..6, k in -2i32..=2, b in 1i32..4) {
        let a = arg(c, e, k);
        let lhs = pochhammer(&a, &[Monomial::q(b), Monomial::q(b)], QMAX).unwrap();
        let ab = &a * &Monomial::q(b);
        let rhs = QProduct::new()
            .with(Pochhammer::q_bases(ab, &[b, 2 * b]).pow(2))
            .with(Pochhammer::q_bases(a, &[2 * b]))
            .expand(QMAX)
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn shift_identity(c in -2i64..=2, e in 1i32..6, k in -2i32..=2, b in 1i32..5) {
        let a = arg(c, e, k);
        let lhs = pochhammer(&a, &[Monomial::q(b)], QMAX).unwrap();
        let rest = pochhammer(&(&a * &Monomial::q(b)), &[Monomial::q(b)], QMAX).unwrap();
        let t = a.to_qr().unwrap();
        prop_assert_eq!(lhs, rest.mul_one_minus(&t));
    }

    #[test]
    fn base_order_is_irrelevant(e in 1i32..6, k in -2i32..=2, b in 1i32..5, d in 1i32..5) {
        let a = arg(1, e, k);
        let x = pochhammer(&a, &[Monomial::q(b), Monomial::q(d)], QMAX).unwrap();
        let y = pochhammer(&a, &[Monomial::q(d), Monomial::q(b)], QMAX).unwrap();
        prop_assert_eq!(x, y);
    }

    #[test]
    fn inverse_contract(e in 1i32..6, k in -2i32..=2, b in 1i32..5) {
        let a = arg(-1, e, k);
        let p = pochhammer(&a, &[Monomial::q(b)], QMAX).unwrap();
        let inv = pochhammer_inverse(&a, &[Monomial::q(b)], QMAX).unwrap();
        prop_assert!((&p * &inv).agrees_with(&QSeries::one(QMAX)));
    }
}
