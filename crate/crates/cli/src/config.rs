use std::path::Path;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ComponentArg {
    /// P_{-+}
    Mp,
    /// P_{+-}
    Pm,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ModeArg {
    Fracture,
    Boundary,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum PathArg {
    Product,
    Expsum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum PinningArg {
    Off,
    Neel,
    AntiNeel,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Observable {
    Mag,
    Fidelity,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WeightsConfig {
    pub grid: usize,
    pub q_min: f64,
    pub q_max: f64,
    pub zeta_min: f64,
    pub zeta_max: f64,
    pub zeta2: f64,
    pub r: f64,
    pub tol: f64,
    pub threshold: f64,
}

impl Default for WeightsConfig {
    fn default() -> Self {
        WeightsConfig {
            grid: 5,
            q_min: -0.5,
            q_max: -0.1,
            zeta_min: 0.6,
            zeta_max: 1.4,
            zeta2: 1.17,
            r: 0.4,
            tol: 1e-17,
            threshold: 1e-12,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NormsConfig {
    pub order: i32,
}

impl Default for NormsConfig {
    fn default() -> Self {
        NormsConfig { order: 48 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FidelityConfig {
    pub deltas: Vec<f64>,
    pub h_min: f64,
    pub h_max: f64,
    pub steps: usize,
    pub include_h_inv: bool,
    pub tol: f64,
}

impl Default for FidelityConfig {
    fn default() -> Self {
        FidelityConfig { deltas: vec![-2.0, -4.0], h_min: 0.0, h_max: 5.0, steps: 51, include_h_inv: true, tol: 1e-17 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CorrelateConfig {
    pub order: i32,
    pub sector: u8,
    pub component: ComponentArg,
    pub mode: ModeArg,
    pub path: PathArg,
}

impl Default for CorrelateConfig {
    fn default() -> Self {
        CorrelateConfig { order: 16, sector: 0, component: ComponentArg::Pm, mode: ModeArg::Fracture, path: PathArg::Product }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct MagnetizeConfig {
    pub order: i32,
}

impl Default for MagnetizeConfig {
    fn default() -> Self {
        MagnetizeConfig { order: 48 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Fig10Config {
    pub delta: f64,
    pub h_min: f64,
    pub h_max: f64,
    pub steps: usize,
    pub include_h_inv: bool,
    pub order: i32,
}

impl Default for Fig10Config {
    fn default() -> Self {
        Fig10Config { delta: -2.0, h_min: 0.0, h_max: 5.0, steps: 51, include_h_inv: true, order: 40 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct QkzConfig {
    pub q: f64,
    pub r: f64,
    pub zeta1: f64,
    pub zeta2: f64,
    pub tol: f64,
    pub n_max: usize,
    pub threshold: f64,
}

impl Default for QkzConfig {
    fn default() -> Self {
        QkzConfig { q: -0.3, r: 0.4, zeta1: 0.9, zeta2: 1.1, tol: 1e-13, n_max: 40, threshold: 1e-8 }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EdConfig {
    pub sites: usize,
    pub delta: f64,
    pub h: f64,
    pub sector: i64,
    pub pinning: PinningArg,
    pub observable: Observable,
    pub tol: f64,
}

impl Default for EdConfig {
    fn default() -> Self {
        EdConfig { sites: 12, delta: -2.0, h: 0.0, sector: 0, pinning: PinningArg::Neel, observable: Observable::Mag, tol: 1e-10 }
    }
}

/// Defaults for every subcommand; flags override these.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub weights: WeightsConfig,
    pub norms: NormsConfig,
    pub fidelity: FidelityConfig,
    pub correlate: CorrelateConfig,
    pub magnetize: MagnetizeConfig,
    pub fig10: Fig10Config,
    pub qkz: QkzConfig,
    pub ed: EdConfig,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        toml::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
    }
}
