//! Experiment configuration files (JSON).
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "regime": "free_banking",
//!   "n_banks": 50, "n_periods": 100,
//!   "r_f": 0.03, "kappa_true": 0.05,
//!   "pi_range": [0.005, 0.05], "lambda_range": [0.2, 0.8], "q_range": [0.02, 0.2],
//!   "noise_sd": 0.002, "seed": 1
//! }
//! ```
//!
//! `loan_size` (1000), `failure_tolerance` (0.01) and `note_unit` (1) are
//! optional.

use std::path::Path;

use interest_core::cliometrics::RegimeConfig;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub schema_version: u32,
    #[serde(flatten)]
    pub regime: RegimeConfig,
}

impl ExperimentConfig {
    pub fn new(regime: RegimeConfig) -> Self {
        ExperimentConfig {
            schema_version: SCHEMA_VERSION,
            regime,
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let config: ExperimentConfig = serde_json::from_str(text)
            .map_err(|e| CliError::Input(format!("invalid config: {e}")))?;
        if config.schema_version != SCHEMA_VERSION {
            return Err(CliError::Input(format!(
                "unsupported schema_version {} (expected {SCHEMA_VERSION})",
                config.schema_version
            )));
        }
        config
            .regime
            .validate()
            .map_err(|e| CliError::Input(format!("invalid config: {e}")))?;
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }
}
