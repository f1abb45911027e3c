use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Float,
    Exact,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Which 3D configurations a sweep draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Independent random directions for X, V and the axis.
    #[default]
    General,
    /// X, V and the axis all along one random direction.
    Collinear,
}

/// Parameters shared by `verify` and `sweep`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub phi_count: usize,
    pub sample_count: usize,
    pub seed: u64,
    /// Overrides every per-check tolerance when set.
    pub tolerance: Option<f64>,
    pub mode: Mode,
    pub family: Family,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            phi_count: 64,
            sample_count: 100,
            seed: 42,
            tolerance: None,
            mode: Mode::Float,
            family: Family::General,
        }
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.phi_count == 0 {
            return Err(CliError::usage("--phi-grid must be a positive integer"));
        }
        if self.sample_count == 0 {
            return Err(CliError::usage("--samples must be a positive integer"));
        }
        if let Some(tol) = self.tolerance {
            if !tol.is_finite() || tol < 0.0 {
                return Err(CliError::usage("--tol must be a finite non-negative number"));
            }
        }
        Ok(())
    }
}
