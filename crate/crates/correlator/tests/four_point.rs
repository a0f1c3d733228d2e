use fxxz_correlator::{build_integrand, extract, standard_slots, FactorList, Mode, Path};
use fxxz_freefield::Sector;

const QMAX: i32 = 8;

fn swap_vars(list: &FactorList) -> FactorList {
    let mut out = list.clone();
    let sw = |w: &mut [i32; 4]| w.swap(0, 1);
    sw(&mut out.scalar.m.w);
    for f in out.factors.iter_mut().chain(out.integrand.iter_mut()) {
        sw(&mut f.arg.m.w);
    }
    out
}

#[test]
fn four_point_components_are_finite_and_path_independent() {
    let mut done = 0;
    for eps in [[-1, -1, 1, 1], [-1, 1, -1, 1], [1, -1, -1, 1], [-1, 1, 1, -1]] {
        let (list, _) = build_integrand(Sector::Zero, &eps, &standard_slots(4), Mode::Fracture).unwrap();
        let Ok(p) = extract(&list, Path::Product, QMAX) else {
            continue;
        };
        assert!(p.series.is_final(), "{eps:?}");
        let e = extract(&list, Path::ExpSum, QMAX).unwrap();
        assert_eq!(p.series, e.series, "{eps:?}");
        let s = extract(&swap_vars(&list), Path::Product, QMAX).unwrap();
        assert_eq!(p.series, s.series, "{eps:?} with relabelled variables");
        done += 1;
    }
    assert!(done >= 1);
}
