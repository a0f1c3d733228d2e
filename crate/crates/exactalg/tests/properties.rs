use fxxz_exactalg::wlaurent::{signed_term, unit_term, wkey};
use fxxz_exactalg::{int, Budget, ElemOp, Grading, QSeries, RPoly, WLaurent};
use proptest::prelude::*;

const MAX: i32 = 12;

fn series(lo: i32) -> impl Strategy<Value = QSeries> {
    prop::collection::vec((lo..=MAX, -2i32..=2, -3i64..=3), 0..6).prop_map(|terms| {
        let mut s = QSeries::zero(MAX);
        for (e, k, c) in terms {
            s.add_at(e, &RPoly::monomial(int(c), k));
        }
        s
    })
}

fn unit_series() -> impl Strategy<Value = QSeries> {
    series(1).prop_map(|s| &s + &QSeries::one(MAX))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn ring_axioms(a in series(0), b in series(0), c in series(0)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn sqrt_squares_back(a in unit_series()) {
        let s = a.sqrt().unwrap();
        prop_assert!((&s * &s).agrees_with(&a));
    }

    #[test]
    fn exp_of_negation_inverts(a in series(1)) {
        let e = a.exp().unwrap();
        let f = (-&a).exp().unwrap();
        prop_assert!((&e * &f).agrees_with(&QSeries::one(MAX)));
    }

    #[test]
    fn extraction_ignores_factor_order(
        ops in prop::collection::vec((any::<bool>(), 1i32..5, -1i32..=1, -2i32..=2, -2i64..=2), 1..6),
        seed in any::<u64>(),
    ) {
        // with λ2 = 2 (|w| = |q|), a term q^e w^k has grade 2e + 2k
        let ops: Vec<ElemOp> = ops
            .into_iter()
            .filter(|(_, e, _, k, c)| e + k > 0 && *c != 0)
            .map(|(mul, e, r, k, c)| {
                let t = signed_term(c, e, r, &[k]);
                if mul { ElemOp::Mul(t) } else { ElemOp::Div(t) }
            })
            .collect();
        let budget = Budget::new(Grading { lambda2: wkey(&[2]), ceiling: 24 }, wkey(&[0]));
        let mut a = WLaurent::one(1, budget.clone());
        a.apply_ops(&ops).unwrap();
        let mut shuffled = ops.clone();
        let n = shuffled.len();
        if n > 1 {
            shuffled.rotate_left((seed % n as u64) as usize);
            shuffled.swap(0, n - 1);
        }
        let mut b = WLaurent::one(1, budget);
        b.apply_ops(&shuffled).unwrap();
        prop_assert_eq!(a.extract(&wkey(&[0])).unwrap(), b.extract(&wkey(&[0])).unwrap());
    }
}

#[test]
fn extraction_is_linear() {
    let budget = Budget::new(Grading { lambda2: wkey(&[2]), ceiling: 20 }, wkey(&[0]));
    let ops = [ElemOp::Div(unit_term(2, 0, &[-1])), ElemOp::Div(unit_term(1, 1, &[1]))];
    let mut f = WLaurent::one(1, budget.clone());
    f.apply_ops(&ops).unwrap();
    let twice = f.scale_series(&QSeries::constant(RPoly::from_int(2), 10));
    let e1 = f.extract(&wkey(&[0])).unwrap();
    let e2 = twice.extract(&wkey(&[0])).unwrap();
    assert!(e2.agrees_with(&e1.scale_rational(&int(2))));
}

#[test]
fn final_series_rejects_negative_orders() {
    let s = QSeries::monomial(RPoly::one(), -2, 4);
    assert!(s.finalize().is_err());
    assert!(QSeries::one(4).finalize().unwrap().is_final());
}
