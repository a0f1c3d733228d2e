use serde::Serialize;

use crate::error::EdError;
use crate::lanczos::{ground_state, GroundState, SolverOptions};
use crate::operator::{build_hamiltonian, site_bit, HamiltonianKind, Pinning};

/// Open-chain and fractured-chain vacua on the same `L` sites, both taken in
/// the total-`S^z` sector `sz`.
#[derive(Clone, Debug, Serialize)]
pub struct FiniteReport {
    pub sites: usize,
    pub delta: f64,
    pub h: f64,
    pub pinning: Pinning,
    pub sz: i64,
    pub bulk: GroundState,
    pub fractured: GroundState,
    pub overlap: f64,
    pub fidelity: f64,
    /// `⟨vac|σᶻ₁|vac'⟩ / ⟨vac|vac'⟩`; absent when the overlap vanishes.
    pub magnetisation: Option<f64>,
    pub note: Option<String>,
}

const ORTHOGONAL: f64 = 1e-12;

pub fn finite_vacua(
    sites: usize,
    delta: f64,
    h: f64,
    sz: i64,
    pinning: Pinning,
    opts: &SolverOptions,
) -> Result<FiniteReport, EdError> {
    let bulk_h = build_hamiltonian(HamiltonianKind::OpenBulk, sites, delta, 0.0, pinning)?;
    let frac_h = build_hamiltonian(HamiltonianKind::Fractured, sites, delta, h, pinning)?;
    let bulk = ground_state(&bulk_h, Some(sz), opts)?;
    let fractured = ground_state(&frac_h, Some(sz), opts)?;
    let one = site_bit(sites, 1).expect("site 1 exists");
    let mut overlap = 0.0;
    let mut weighted = 0.0;
    for ((s, a), b) in bulk.basis.iter().zip(&bulk.vector).zip(&fractured.vector) {
        overlap += a * b;
        weighted += if s >> one & 1 == 1 { a * b } else { -a * b };
    }
    let (fidelity, magnetisation, note) = if overlap.abs() < ORTHOGONAL {
        (0.0, None, Some(format!("vacua are orthogonal in the Sz = {sz} sector")))
    } else {
        (overlap * overlap, Some(weighted / overlap), None)
    };
    Ok(FiniteReport {
        sites,
        delta,
        h,
        pinning,
        sz,
        bulk,
        fractured,
        overlap: overlap.abs(),
        fidelity,
        magnetisation,
        note,
    })
}

/// `|⟨vac|vac'⟩|²` with Néel-pinned ends.
pub fn finite_fidelity(sites: usize, delta: f64, h: f64) -> Result<f64, EdError> {
    Ok(finite_vacua(sites, delta, h, 0, Pinning::Neel, &SolverOptions::default())?.fidelity)
}

/// Site-1 magnetisation with Néel-pinned ends; `None` for orthogonal vacua.
pub fn finite_magnetisation(sites: usize, delta: f64, h: f64) -> Result<Option<f64>, EdError> {
    Ok(finite_vacua(sites, delta, h, 0, Pinning::Neel, &SolverOptions::default())?.magnetisation)
}
