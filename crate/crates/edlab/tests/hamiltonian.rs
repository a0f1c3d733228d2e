use fxxz_edlab::{
    build_hamiltonian, dense_ground_state, ground_state, site_bit, HamiltonianKind, Pinning,
    SectorBasis, SolverOptions, SparseMatrix,
};

use HamiltonianKind::*;

#[test]
fn two_site_open_chain() {
    let h = build_hamiltonian(OpenBulk, 2, -2.0, 0.0, Pinning::Off).unwrap();
    let gs = ground_state(&h, None, &SolverOptions::default()).unwrap();
    assert!((gs.energy + 2.0).abs() < 1e-12);
    // |+-> and |-+> are the patterns 0b01 and 0b10
    let s = 0.5f64.sqrt();
    assert!((gs.amplitude(0b01) - s).abs() < 1e-12);
    assert!((gs.amplitude(0b10) - s).abs() < 1e-12);
    assert_eq!(gs.amplitude(0b00), 0.0);
}

#[test]
fn fractured_chain_splits_into_two_halves() {
    let h = build_hamiltonian(Fractured, 4, -2.0, 0.0, Pinning::Off).unwrap();
    let gs = ground_state(&h, None, &SolverOptions::default()).unwrap();
    assert!((gs.energy + 4.0).abs() < 1e-12);
    let one = site_bit(4, 1).unwrap();
    let zero = site_bit(4, 0).unwrap();
    assert_eq!((zero, one), (1, 2));
    assert!(!h.terms.iter().any(|t| t.sites.len() == 2 && t.sites.contains(&zero) && t.sites.contains(&one)));
}

#[test]
fn wrap_bond_changes_the_energy() {
    let open = build_hamiltonian(OpenBulk, 4, -2.0, 0.0, Pinning::Off).unwrap();
    let per = build_hamiltonian(PeriodicBulk, 4, -2.0, 0.0, Pinning::Off).unwrap();
    let (eo, _) = dense_ground_state(&open, None).unwrap();
    let (ep, _) = dense_ground_state(&per, None).unwrap();
    assert!(ep < eo - 0.5, "{ep} {eo}");
}

#[test]
fn operators_are_symmetric_and_conserve_sz() {
    for kind in [OpenBulk, PeriodicBulk, Fractured] {
        for pin in [Pinning::Off, Pinning::Neel] {
            let op = build_hamiltonian(kind, 8, -1.7, 0.6, pin).unwrap();
            assert!(op.conserves_sz());
            for sz in [-1, 0, 2] {
                let basis = SectorBasis::new(8, Some(sz), 1 << 20).unwrap();
                let m = SparseMatrix::restrict(&op, &basis).unwrap();
                assert_eq!(m.asymmetry(), 0.0);
            }
        }
    }
}

#[test]
fn full_space_action_agrees_with_sectors() {
    let op = build_hamiltonian(Fractured, 6, -2.5, 0.3, Pinning::Neel).unwrap();
    let basis = SectorBasis::new(6, Some(0), 1 << 20).unwrap();
    let m = SparseMatrix::restrict(&op, &basis).unwrap();
    let x: Vec<f64> = (0..basis.dim()).map(|i| (i as f64 * 0.37).sin()).collect();
    let mut y = vec![0.0; basis.dim()];
    m.matvec(&x, &mut y);
    let mut full = vec![0.0; 1 << 6];
    for (s, v) in basis.states.iter().zip(&x) {
        full[*s as usize] = *v;
    }
    let fy = op.apply(&full);
    for (s, v) in basis.states.iter().zip(&y) {
        assert!((fy[*s as usize] - v).abs() < 1e-14);
    }
}

#[test]
fn oversized_requests_are_refused() {
    assert!(SectorBasis::new(30, Some(0), 1 << 20).is_err());
    assert!(build_hamiltonian(Fractured, 5, -2.0, 0.0, Pinning::Off).is_err());
    assert!(build_hamiltonian(OpenBulk, 64, -2.0, 0.0, Pinning::Off).is_err());
}
