//! Scenario configuration files.
//!
//! JSON, one object per scenario. Angles cross this boundary in degrees and
//! are converted to radians exactly once, here. Unknown keys are a hard
//! error. `pdp_file` is resolved relative to the config file's directory.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::angle::WrappedAngle;
use crate::antenna::AntennaPattern;
use crate::engine::{PasScale, PathCounts, Scenario};
use crate::error::{McmError, Result};
use crate::pdp::{normalize_power, parse_pdp_csv, scale_delays, PdpMode};

fn default_mu() -> f64 {
    10.0
}
fn default_paths() -> PathCounts {
    PathCounts::Uniform(2000)
}
fn default_bin_width() -> f64 {
    0.5
}
fn default_seed() -> u64 {
    1
}
fn default_true() -> bool {
    true
}
fn default_pas_scale() -> PasScale {
    PasScale::InputPower
}
fn default_carrier() -> f64 {
    2.6e9
}

/// A scenario file, field for field.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub d_m: f64,
    #[serde(default)]
    pub kappa: f64,
    #[serde(default = "default_mu")]
    pub mu: f64,
    pub hpbw_tx_deg: f64,
    pub hpbw_rx_deg: f64,
    pub alpha_deg: f64,
    pub beta_deg: f64,
    #[serde(default = "default_paths")]
    pub paths_per_cluster: PathCounts,
    #[serde(default = "default_bin_width")]
    pub bin_width_deg: f64,
    #[serde(default = "default_seed")]
    pub seed: u64,
    pub pdp_file: PathBuf,
    pub pdp_mode: PdpMode,
    /// rms delay spread in nanoseconds; required in normalized mode.
    #[serde(default)]
    pub ds_ns: Option<f64>,
    #[serde(default = "default_true")]
    pub normalize_pdp: bool,
    #[serde(default = "default_pas_scale")]
    pub pas_scale: PasScale,
    #[serde(default = "default_carrier")]
    pub carrier_hz: f64,
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            McmError::InvalidScenario(format!("cannot read {}: {e}", path.display()))
        })?;
        serde_json::from_str(&text)
            .map_err(|e| McmError::InvalidScenario(format!("{}: {e}", path.display())))
    }

    /// Resolve the PDP path against the directory holding the config file.
    pub fn resolve_pdp(&self, config_path: &Path) -> PathBuf {
        if self.pdp_file.is_absolute() {
            self.pdp_file.clone()
        } else {
            config_path
                .parent()
                .unwrap_or_else(|| Path::new("."))
                .join(&self.pdp_file)
        }
    }

    /// Build a runnable scenario, loading and validating the PDP file.
    pub fn build(&self, pdp_path: &Path) -> Result<Scenario> {
        let text = std::fs::read_to_string(pdp_path).map_err(|e| {
            McmError::InvalidScenario(format!("cannot read {}: {e}", pdp_path.display()))
        })?;
        let taps = parse_pdp_csv(&text)?;
        let ds_s = match (self.pdp_mode, self.ds_ns) {
            (PdpMode::Normalized, Some(ds)) => ds * 1e-9,
            (PdpMode::Normalized, None) => {
                return Err(McmError::InvalidScenario(
                    "ds_ns is required when pdp_mode is normalized".into(),
                ))
            }
            (PdpMode::Absolute, _) => 1.0,
        };
        let mut pdp = scale_delays(&taps, self.pdp_mode, ds_s)?;
        if self.normalize_pdp {
            pdp = normalize_power(&pdp);
        }
        let scenario = Scenario {
            distance_m: self.d_m,
            kappa: self.kappa,
            mu: self.mu,
            tx: AntennaPattern::gaussian(
                WrappedAngle::from_degrees(self.alpha_deg)?,
                self.hpbw_tx_deg.to_radians(),
            )?,
            rx: AntennaPattern::gaussian(
                WrappedAngle::from_degrees(self.beta_deg)?,
                self.hpbw_rx_deg.to_radians(),
            )?,
            pdp,
            paths_per_cluster: self.paths_per_cluster.clone(),
            bin_half_width: 0.5 * self.bin_width_deg.to_radians(),
            seed: self.seed,
            pas_scale: self.pas_scale,
            carrier_hz: self.carrier_hz,
        };
        scenario.validate()?;
        Ok(scenario)
    }

    /// One-line JSON echo for output metadata.
    pub fn echo(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}
