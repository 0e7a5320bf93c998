//! JSON experiment configuration: strict schema, command-specific validation.

use lmg_net::disorder::DisorderConfig;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

/// Coupling strength: a single value or a uniform grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JValue {
    Scalar(f64),
    Range { min: f64, max: f64, steps: usize },
}

impl JValue {
    pub fn grid(&self) -> Result<Vec<f64>> {
        match *self {
            JValue::Scalar(_) => Err(CliError::Config("j: this command needs a {min, max, steps} range".into())),
            JValue::Range { min, max, steps } => {
                if steps < 2 || !(max > min) {
                    return Err(CliError::Config("j: range needs max > min and steps >= 2".into()));
                }
                Ok((0..steps)
                    .map(|k| min + (max - min) * k as f64 / (steps - 1) as f64)
                    .collect())
            }
        }
    }

    pub fn scalar(&self) -> Result<f64> {
        match *self {
            JValue::Scalar(j) => Ok(j),
            JValue::Range { .. } => Err(CliError::Config("j: this command needs a scalar value".into())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Perturbation {
    pub qubit: usize,
    pub g: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub t_max: f64,
    pub steps: usize,
}

fn default_delta() -> f64 {
    1.0
}

/// One experiment, loaded from a JSON file. Unknown fields are rejected so a
/// typo cannot silently fall back to a default.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub command: String,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default = "default_delta")]
    pub delta: f64,
    #[serde(default)]
    pub j: Option<JValue>,
    #[serde(default)]
    pub perturbation: Option<Perturbation>,
    #[serde(default)]
    pub initial_state: Option<String>,
    #[serde(default)]
    pub targets: Option<Vec<String>>,
    #[serde(default)]
    pub time: Option<TimeGrid>,
    #[serde(default)]
    pub disorder: Option<DisorderConfig>,
    #[serde(default)]
    pub output: Option<String>,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl ExperimentConfig {
    pub fn load(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        let cfg: ExperimentConfig = serde_json::from_str(&text)?;
        Ok(cfg)
    }

    pub fn require_n(&self) -> Result<usize> {
        self.n.ok_or_else(|| CliError::Config("n: required for this command".into()))
    }

    pub fn require_j(&self) -> Result<&JValue> {
        self.j.as_ref().ok_or_else(|| CliError::Config("j: required for this command".into()))
    }

    pub fn require_time(&self) -> Result<TimeGrid> {
        self.time.ok_or_else(|| CliError::Config("time: required for this command".into()))
    }

    pub fn require_initial_state(&self) -> Result<&str> {
        self.initial_state
            .as_deref()
            .ok_or_else(|| CliError::Config("initial_state: required for this command".into()))
    }

    pub fn require_targets(&self) -> Result<&[String]> {
        match self.targets.as_deref() {
            Some(t) if !t.is_empty() => Ok(t),
            _ => Err(CliError::Config("targets: at least one target required".into())),
        }
    }

    pub fn require_disorder(&self) -> Result<&DisorderConfig> {
        self.disorder
            .as_ref()
            .ok_or_else(|| CliError::Config("disorder: block required for this command".into()))
    }
}
