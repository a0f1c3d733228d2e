use fxxz_model::{delta_to_q, field_map, field_map_inv, h_inv, relation_residuals, Field};

#[test]
fn relations_hold_on_a_grid() {
    let mut worst: f64 = 0.0;
    for i in 0..5 {
        for j in 0..5 {
            let q = -0.5 + 0.1 * i as f64;
            let z = 0.6 + 0.2 * j as f64;
            let res = relation_residuals(q, 0.4, z, 1.17, 1e-17).unwrap();
            worst = worst.max(res.max());
        }
    }
    assert!(worst < 1e-12, "{worst:e}");
}

#[test]
fn relations_hold_for_negative_r() {
    for r in [-0.8, -0.3, 0.0, 0.9] {
        let res = relation_residuals(-0.35, r, 0.75, 1.2, 1e-17).unwrap();
        assert!(res.max() < 1e-12, "r={r}: {res:?}");
    }
}

#[test]
fn field_map_round_trips() {
    let q = delta_to_q(-2.0);
    assert!((q - (-2.0 + 3f64.sqrt())).abs() < 1e-15);
    assert!(field_map_inv(q, Field::Finite(h_inv(q))).abs() < 1e-14);
    assert_eq!(field_map_inv(q, Field::Finite(0.0)), -1.0);
    assert_eq!(field_map_inv(q, Field::Infinite), 1.0);
    assert_eq!(field_map(q, 1.0), Field::Infinite);
    for h in [0.1, 0.7, 2.5, 40.0] {
        let r = field_map_inv(q, Field::Finite(h));
        assert!(r > -1.0 && r < 1.0);
        match field_map(q, r) {
            Field::Finite(back) => assert!((back - h).abs() < 1e-10 * h.max(1.0), "{h} -> {back}"),
            Field::Infinite => panic!("finite field mapped to infinity"),
        }
    }
}
