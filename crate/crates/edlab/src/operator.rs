use serde::Serialize;

use crate::error::EdError;

const MAX_SITES: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Pauli {
    XX,
    YY,
    ZZ,
    Z,
}

/// `coupling · σ^a_i σ^a_j`, or `coupling · σ^z_i` for [`Pauli::Z`]. Sites are bits.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Term {
    pub coupling: f64,
    pub sites: Vec<usize>,
    pub kind: Pauli,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HamiltonianKind {
    OpenBulk,
    PeriodicBulk,
    Fractured,
}

/// Boundary fields `∓½|Δ| (-1)^s σ^z_s` on the two outer end sites, which
/// select one Néel pattern out of the near-degenerate pair of a finite chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Pinning {
    Off,
    Neel,
    AntiNeel,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpinOperator {
    pub sites: usize,
    pub terms: Vec<Term>,
}

fn spin(state: u64, bit: usize) -> f64 {
    if state >> bit & 1 == 1 {
        1.0
    } else {
        -1.0
    }
}

/// Bit index of the site labelled `site`.
pub fn site_bit(sites: usize, site: i64) -> Option<usize> {
    let b = site + sites as i64 / 2 - 1;
    (0..sites as i64).contains(&b).then_some(b as usize)
}

impl SpinOperator {
    /// Images `(state', amplitude)` of a basis state.
    pub fn act(&self, state: u64, out: &mut Vec<(u64, f64)>) {
        out.clear();
        let mut diag = 0.0;
        for t in &self.terms {
            match t.kind {
                Pauli::Z => diag += t.coupling * spin(state, t.sites[0]),
                Pauli::ZZ => diag += t.coupling * spin(state, t.sites[0]) * spin(state, t.sites[1]),
                Pauli::XX | Pauli::YY => {
                    let (a, b) = (t.sites[0], t.sites[1]);
                    let amp = match t.kind {
                        Pauli::XX => t.coupling,
                        _ => -t.coupling * spin(state, a) * spin(state, b),
                    };
                    out.push((state ^ (1 << a) ^ (1 << b), amp));
                }
            }
        }
        if diag != 0.0 {
            out.push((state, diag));
        }
    }

    /// `H x` on the full `2^L` space.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), 1 << self.sites);
        let mut y = vec![0.0; x.len()];
        let mut buf = Vec::new();
        for (s, xs) in x.iter().enumerate() {
            if *xs == 0.0 {
                continue;
            }
            self.act(s as u64, &mut buf);
            for (t, a) in &buf {
                y[*t as usize] += a * xs;
            }
        }
        y
    }

    /// Whether every term commutes with the total `S^z`.
    pub fn conserves_sz(&self) -> bool {
        let xx: Vec<_> = self.terms.iter().filter(|t| t.kind == Pauli::XX).map(|t| (&t.sites, t.coupling)).collect();
        let yy: Vec<_> = self.terms.iter().filter(|t| t.kind == Pauli::YY).map(|t| (&t.sites, t.coupling)).collect();
        xx == yy
    }
}

/// `H = -½ Σ (σˣσˣ + σʸσʸ + Δ σᶻσᶻ)` over the bonds of the chosen geometry.
///
/// The fractured chain drops the bond between sites 1 and 0 and adds
/// `+h σᶻ₁ - h σᶻ₀`.
pub fn build_hamiltonian(
    kind: HamiltonianKind,
    sites: usize,
    delta: f64,
    h: f64,
    pinning: Pinning,
) -> Result<SpinOperator, EdError> {
    if sites < 2 || sites % 2 == 1 {
        return Err(EdError::Invalid(format!("L = {sites} must be even and at least 2")));
    }
    if sites > MAX_SITES {
        return Err(EdError::TooLarge { what: format!("L = {sites}"), dim: sites, cap: MAX_SITES });
    }
    let one = site_bit(sites, 1).expect("site 1 exists");
    let zero = site_bit(sites, 0).expect("site 0 exists");
    let mut bonds: Vec<(usize, usize)> = (0..sites - 1).map(|b| (b, b + 1)).collect();
    match kind {
        HamiltonianKind::OpenBulk => {}
        HamiltonianKind::PeriodicBulk => {
            if sites > 2 {
                bonds.push((sites - 1, 0));
            }
        }
        HamiltonianKind::Fractured => bonds.retain(|&(a, b)| !(a == zero && b == one)),
    }
    let mut terms = Vec::new();
    for (a, b) in bonds {
        terms.push(Term { coupling: -0.5, sites: vec![a, b], kind: Pauli::XX });
        terms.push(Term { coupling: -0.5, sites: vec![a, b], kind: Pauli::YY });
        terms.push(Term { coupling: -0.5 * delta, sites: vec![a, b], kind: Pauli::ZZ });
    }
    if kind == HamiltonianKind::Fractured && h != 0.0 {
        terms.push(Term { coupling: h, sites: vec![one], kind: Pauli::Z });
        terms.push(Term { coupling: -h, sites: vec![zero], kind: Pauli::Z });
    }
    let sign = match pinning {
        Pinning::Off => 0.0,
        Pinning::Neel => 1.0,
        Pinning::AntiNeel => -1.0,
    };
    if sign != 0.0 {
        let offset = sites as i64 / 2 - 1;
        for b in [0, sites - 1] {
            let parity = if (b as i64 - offset).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            terms.push(Term { coupling: -0.5 * delta.abs() * parity * sign, sites: vec![b], kind: Pauli::Z });
        }
    }
    Ok(SpinOperator { sites, terms })
}
