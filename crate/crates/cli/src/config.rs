//! Flat experiment configuration. Keys mirror the long flag names; a config
//! file sets any subset of them and flags given on the command line win.

use std::path::{Path, PathBuf};

use hadamard_core::noise::Spacing;
use hadamard_core::{NoiseFamily, NoiseSpec};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct ExperimentConfig {
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    /// Destination only; never embedded in artifacts.
    #[serde(skip_serializing)]
    pub out: Option<PathBuf>,
    pub no_timestamp: bool,

    pub lx: f64,
    pub ly: f64,
    pub ax: f64,
    pub ay: f64,

    pub noise: NoiseFamily,
    pub eps: f64,
    pub samples: usize,
    pub grid: usize,
    pub zero_mean: bool,
    pub periods: u32,
    pub phase: f64,

    pub lx_min: f64,
    pub lx_max: f64,
    pub points: usize,
    pub spacing: Spacing,

    pub eps_list: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expect_slope: Option<f64>,
    pub tol: f64,

    pub nf: usize,
    pub steps: usize,
    pub fd_step: f64,
    pub ladder: Vec<usize>,
    pub oracle_points: usize,
    pub oracle_eps: f64,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            seed: 1,
            format: None,
            out: None,
            no_timestamp: false,
            lx: 1.0,
            ly: 1.0,
            ax: 0.0,
            ay: 0.0,
            noise: NoiseFamily::Uniform,
            eps: 0.01,
            samples: 100,
            grid: 4096,
            zero_mean: true,
            periods: 3,
            phase: 0.0,
            lx_min: 0.8,
            lx_max: 5.0,
            points: 50,
            spacing: Spacing::Lin,
            eps_list: vec![1e-3, 2e-3, 5e-3, 1e-2, 2e-2, 3e-2],
            expect_slope: None,
            tol: 0.1,
            nf: 64,
            steps: 400,
            fd_step: 1e-3,
            ladder: vec![32, 48, 64, 96],
            oracle_points: 10,
            oracle_eps: 0.05,
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("cannot read config {}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::usage(format!("invalid config {}: {e}", path.display())))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes to TOML")
    }

    pub fn noise_spec(&self) -> NoiseSpec {
        NoiseSpec {
            family: self.noise,
            eps: self.eps,
            grid: self.grid,
            zero_mean: self.zero_mean,
            periods: self.periods,
            phase: self.phase,
        }
    }
}
