use std::path::Path;

use aperiodic_core::generators::SourceSpec;
use aperiodic_core::spectra::WeightVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

/// A weight given as a real number or an `[re, im]` pair.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightSpec {
    Real(f64),
    Complex([f64; 2]),
}

/// Everything a run needs. Commands read the fields they use and fill in
/// defaults, and the filled-in copy is echoed to the manifest.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<SourceSpec>,
    /// Second source, for `metric`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub other: Option<SourceSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schedule: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<WeightSpec>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub region: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scan: Option<f64>,
    /// `[[x, color], …]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cluster: Option<Vec<(f64, usize)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offsets: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset_span: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_range: Option<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps_grid: Option<f64>,
    /// `frequency`, `direct` or `both`, for `autocorr`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    /// Also write gnuplot columns.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plot_data: Option<bool>,
}

impl RunConfig {
    /// Reads a config file, or the `config` block of an emitted manifest.
    pub fn load(path: &Path) -> Result<RunConfig, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let mut v: Value =
            serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        if v.get("command").is_some() {
            if let Some(inner) = v.get_mut("config") {
                v = inner.take();
            }
        }
        serde_json::from_value(v).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn weights_for(&mut self, colors: usize) -> Result<WeightVector, CliError> {
        let spec = self
            .weights
            .get_or_insert_with(|| vec![WeightSpec::Real(1.0); colors])
            .clone();
        let a = spec
            .iter()
            .map(|w| match *w {
                WeightSpec::Real(x) => Complex64::new(x, 0.0),
                WeightSpec::Complex([re, im]) => Complex64::new(re, im),
            })
            .collect();
        Ok(WeightVector::new(a)?)
    }
}
