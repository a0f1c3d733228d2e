//! Exact diagonalization of finite XXZ chains.
//!
//! Sites are labelled as in the infinite chain, from `L/2` on the left down to
//! `-(L/2 - 1)` on the right, so the fracture sits between sites 1 and 0.
//! Bit `b` of a basis state holds site `b - (L/2 - 1)`; a set bit is spin up.

mod dump;
mod error;
mod finite;
mod lanczos;
mod operator;
mod sector;

pub use dump::{dump_state, StateSidecar};
pub use error::EdError;
pub use finite::{finite_fidelity, finite_magnetisation, finite_vacua, FiniteReport};
pub use lanczos::{dense_ground_state, ground_state, sector_minima, GroundState, SolverOptions};
pub use operator::{build_hamiltonian, site_bit, HamiltonianKind, Pauli, Pinning, SpinOperator, Term};
pub use sector::{SectorBasis, SparseMatrix, DEFAULT_DIM_CAP};
