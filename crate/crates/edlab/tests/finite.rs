use fxxz_edlab::{dump_state, finite_vacua, Pinning, SolverOptions};
use fxxz_freefield::Sector;
use fxxz_magnet::{magnetisation_series, spontaneous_series};
use fxxz_model::{delta_to_q, field_map_inv, h_inv, Field};

#[test]
fn sixteen_site_trends() {
    let delta = -2.0;
    let q = delta_to_q(delta);
    let hi = h_inv(q);
    let opts = SolverOptions::default();
    let grid = [0.0, 0.25, 0.5, hi, 1.25, 1.5, 2.0, 3.0];
    let fid: Vec<f64> = grid
        .iter()
        .map(|&h| finite_vacua(16, delta, h, 0, Pinning::Neel, &opts).unwrap().fidelity)
        .collect();
    let best = fid.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).unwrap().0;
    assert_eq!(grid[best], hi, "{fid:?}");

    let spont = -spontaneous_series(40).unwrap().eval(q, 0.0).0;
    let m0 = finite_vacua(16, delta, 0.0, 0, Pinning::Neel, &opts).unwrap().magnetisation.unwrap();
    assert!((m0 - spont).abs() < 0.05, "{m0} vs {spont}");
    let m10 = finite_vacua(16, delta, 10.0, 0, Pinning::Neel, &opts).unwrap().magnetisation.unwrap();
    assert!(m10 < -0.95, "{m10}");
}

#[test]
fn flipping_the_field_and_the_pinning_is_a_symmetry() {
    let opts = SolverOptions::default();
    for h in [0.4, 1.3] {
        let a = finite_vacua(10, -2.0, h, 0, Pinning::Neel, &opts).unwrap();
        let b = finite_vacua(10, -2.0, -h, 0, Pinning::AntiNeel, &opts).unwrap();
        assert!((a.fidelity - b.fidelity).abs() < 1e-10);
        assert!((a.magnetisation.unwrap() + b.magnetisation.unwrap()).abs() < 1e-10);
    }
}

#[test]
fn magnetisation_approaches_the_series_with_length() {
    let delta = -2.0;
    let q = delta_to_q(delta);
    let series = magnetisation_series(Sector::Zero, 32).unwrap();
    let opts = SolverOptions::default();
    for h in [0.0, h_inv(q), 2.0] {
        let r = field_map_inv(q, Field::Finite(h));
        let target = -series.eval(q, r).0;
        let mut last = f64::INFINITY;
        for l in [8, 12, 16] {
            let m = finite_vacua(l, delta, h, 0, Pinning::Neel, &opts).unwrap().magnetisation.unwrap();
            let gap = (m - target).abs();
            assert!(gap <= last + 0.05, "h={h} L={l}: {m} vs {target}");
            last = gap;
        }
        assert!(last < 0.05, "h={h}: {last}");
    }
}

#[test]
fn state_dump_round_trips() {
    let rep = finite_vacua(6, -2.0, 0.5, 0, Pinning::Neel, &SolverOptions::default()).unwrap();
    let dir = std::env::temp_dir().join(format!("fxxz-dump-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (bin, json) = dump_state(&rep.fractured, 6, &dir.join("vac")).unwrap();
    let bytes = std::fs::read(&bin).unwrap();
    let back: Vec<f64> = bytes.chunks(8).map(|c| f64::from_le_bytes(c.try_into().unwrap())).collect();
    assert_eq!(back, rep.fractured.vector);
    let side: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(side["dim"], 20);
    std::fs::remove_dir_all(dir).unwrap();
}
