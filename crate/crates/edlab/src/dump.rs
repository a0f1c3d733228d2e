use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::EdError;
use crate::lanczos::GroundState;

/// Description written next to a dumped state vector.
#[derive(Clone, Debug, Serialize)]
pub struct StateSidecar {
    pub sites: usize,
    pub sz: Option<i64>,
    pub dim: usize,
    pub energy: f64,
    pub residual: f64,
    pub data: String,
    pub layout: String,
    pub basis: Vec<u64>,
}

/// Writes `<stem>.bin` (little-endian `f64` amplitudes) and `<stem>.json`.
pub fn dump_state(gs: &GroundState, sites: usize, stem: &Path) -> Result<(PathBuf, PathBuf), EdError> {
    let bin = stem.with_extension("bin");
    let json = stem.with_extension("json");
    let bytes: Vec<u8> = gs.vector.iter().flat_map(|x| x.to_le_bytes()).collect();
    fs::write(&bin, bytes)?;
    let side = StateSidecar {
        sites,
        sz: gs.sz,
        dim: gs.vector.len(),
        energy: gs.energy,
        residual: gs.residual,
        data: bin.file_name().map(|f| f.to_string_lossy().into_owned()).unwrap_or_default(),
        layout: "little-endian float64, one amplitude per basis state in the order of `basis`; \
                 bit b of a basis state is site b - (L/2 - 1), set bit = spin up"
            .into(),
        basis: gs.basis.clone(),
    };
    fs::write(&json, serde_json::to_string_pretty(&side)?)?;
    Ok((bin, json))
}
