//! Configuration file loading and flag overrides.

use std::fs;

use alhqg::GyroConfig;

use crate::args::ConfigArgs;
use crate::CliError;

/// The reference design shipped with the tool.
pub const REFERENCE_JSON: &str = include_str!(concat!(env!("CARGO_MANIFEST_DIR"), "/../../paper.json"));

pub fn parse_config(text: &str, origin: &str) -> Result<GyroConfig, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Config(format!("{origin}: {e}")))
}

/// Loads the file (or the bundled design), applies overrides and validates.
pub fn resolve(args: &ConfigArgs) -> Result<GyroConfig, CliError> {
    let mut cfg = match &args.config {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
            parse_config(&text, &path.display().to_string())?
        }
        None => parse_config(REFERENCE_JSON, "bundled paper.json")?,
    };
    let overrides = [
        (args.n_in, &mut cfg.n_in),
        (args.gain, &mut cfg.gain_1),
        (args.wavelength, &mut cfg.wavelength),
        (args.diameter, &mut cfg.loop_diameter),
        (args.length, &mut cfg.loop_length),
        (args.attenuation, &mut cfg.fiber_attenuation_db_per_km),
        (args.xi, &mut cfg.attenuation_ratio),
        (args.theta_1, &mut cfg.theta_1),
        (args.theta_2, &mut cfg.theta_2),
        (args.repetition_rate, &mut cfg.repetition_rate),
    ];
    for (value, field) in overrides {
        if let Some(v) = value {
            *field = v;
        }
    }
    cfg.validate().map_err(|e| CliError::Config(e.to_string()))?;
    Ok(cfg)
}
