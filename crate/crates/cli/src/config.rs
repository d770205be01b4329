use std::path::Path;

use serde::Deserialize;

use crate::exit::{CliError, ExitCode};

/// Defaults shared by several commands, read from a `key = value` file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub threads: Option<usize>,
    pub samples: Option<usize>,
    pub disk_rings: Option<usize>,
    pub disk_samples: Option<usize>,
    pub pixels: Option<usize>,
    pub max_cells: Option<usize>,
    pub trials: Option<usize>,
    pub seed: Option<u64>,
    /// Relative multiplier gap accepted as a match.
    pub match_tol: Option<f64>,
    pub gate_high: Option<f64>,
    pub gate_low: Option<f64>,
    pub classify_tol: Option<f64>,
    pub root_tol: Option<f64>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            CliError::new(ExitCode::Io, format!("cannot read {}: {e}", path.display()))
        })?;
        let config: Config = toml::from_str(&text)
            .map_err(|e| CliError::usage(format!("bad config {}: {e}", path.display())))?;
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<(), CliError> {
        let positive = |name: &str, v: Option<f64>| match v {
            Some(x) if !(x.is_finite() && x > 0.0) => {
                Err(CliError::usage(format!("config `{name}` must be positive")))
            }
            _ => Ok(()),
        };
        positive("match_tol", self.match_tol)?;
        positive("gate_high", self.gate_high)?;
        positive("gate_low", self.gate_low)?;
        positive("classify_tol", self.classify_tol)?;
        positive("root_tol", self.root_tol)?;
        if let (Some(lo), Some(hi)) = (self.gate_low, self.gate_high) {
            if lo >= hi {
                return Err(CliError::usage(
                    "config `gate_low` must be below `gate_high`",
                ));
            }
        }
        Ok(())
    }
}
