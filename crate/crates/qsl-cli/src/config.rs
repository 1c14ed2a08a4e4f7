//! Run configuration: defaults, optional JSON file, flag overrides.

use std::fs;
use std::path::Path;

use clap::ValueEnum;
use qsl_core::bounds::AlphaGridSpec;
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
pub enum Units {
    /// Raw times, hbar = 1
    #[serde(rename = "natural")]
    #[value(name = "natural")]
    Natural,
    /// Times in multiples of pi*hbar/(2E)
    #[serde(rename = "pi_hbar_over_2E")]
    #[value(name = "pi-hbar-over-2e")]
    PiHbarOver2E,
}

impl Units {
    /// Divisor applied to raw times for display.
    pub fn time_scale(self, mean_energy: f64) -> Result<f64, CliError> {
        match self {
            Units::Natural => Ok(1.0),
            Units::PiHbarOver2E => {
                if mean_energy > 0.0 {
                    Ok(core::f64::consts::FRAC_PI_2 / mean_energy)
                } else {
                    Err(CliError::Usage(
                        "normalized units need a positive mean energy".into(),
                    ))
                }
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub seed: u64,
    pub eps_resolution: usize,
    pub grid_ladder: Option<Vec<f64>>,
    pub output_format: Format,
    pub units: Units,
}

/// On-disk mirror of `RunConfig`; every field optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    seed: Option<u64>,
    eps_resolution: Option<usize>,
    grid_ladder: Option<Vec<f64>>,
    output_format: Option<Format>,
    units: Option<Units>,
}

pub fn resolve(
    path: Option<&Path>,
    seed: Option<u64>,
    eps_resolution: Option<usize>,
    format: Option<Format>,
    units: Option<Units>,
) -> Result<RunConfig, CliError> {
    let file = match path {
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| CliError::Usage(format!("config {}: {e}", p.display())))?;
            serde_json::from_str::<FileConfig>(&text)
                .map_err(|e| CliError::Usage(format!("config {}: {e}", p.display())))?
        }
        None => FileConfig::default(),
    };
    let cfg = RunConfig {
        seed: seed.or(file.seed).unwrap_or(0),
        eps_resolution: eps_resolution.or(file.eps_resolution).unwrap_or(101),
        grid_ladder: file.grid_ladder,
        output_format: format.or(file.output_format).unwrap_or(Format::Csv),
        units: units.or(file.units).unwrap_or(Units::Natural),
    };
    if cfg.eps_resolution < 2 {
        return Err(CliError::Usage(format!(
            "eps resolution {} below 2",
            cfg.eps_resolution
        )));
    }
    if let Some(ladder) = &cfg.grid_ladder {
        if ladder.len() < 3 {
            return Err(CliError::Usage("grid ladder needs at least 3 rungs".into()));
        }
        if ladder.iter().any(|s| !(*s > 0.0) || !s.is_finite()) {
            return Err(CliError::Usage(
                "grid ladder spacings must be positive".into(),
            ));
        }
        if ladder.windows(2).any(|w| w[1] >= w[0]) {
            return Err(CliError::Usage(
                "grid ladder must be strictly decreasing".into(),
            ));
        }
    }
    Ok(cfg)
}

/// Alpha reconstruction grids for this run's seed and ladder.
pub fn grid_spec(cfg: &RunConfig) -> AlphaGridSpec {
    let mut spec = AlphaGridSpec::with_seed(cfg.seed);
    if let Some(ladder) = &cfg.grid_ladder {
        spec.theta_spacings = ladder.clone();
    }
    spec
}
