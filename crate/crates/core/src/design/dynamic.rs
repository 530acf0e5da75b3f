use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::phase::operating_phase;
use super::search::linear_grid;
use crate::config::GyroConfig;
use crate::error::{Error, Result};
use crate::fog::{fog_sensitivity, FogConfig};
use crate::model::{GyroModel, Sensitivity};

/// Earth's sidereal rotation rate, rad/s.
pub const EARTH_RATE: f64 = 7.292_115e-5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DynamicRangeRecord {
    pub omega: f64,
    pub phase: f64,
    pub alhqg: Sensitivity,
    pub sql: f64,
    pub fog: Sensitivity,
    pub earth_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DynamicRangeTable {
    pub config: GyroConfig,
    /// Operating phase `Lambda(N_in, G)`, radians.
    pub operating_phase: f64,
    /// Most sensitive rotation rate `Lambda / beta`, rad/s.
    pub omega_opt: f64,
    pub records: Vec<DynamicRangeRecord>,
}

/// Sensitivity of the gyroscope, its standard quantum limit and the matched
/// FOG across a linear range of rotation rates.
pub fn dynamic_range(
    cfg: &GyroConfig,
    omega_from: f64,
    omega_to: f64,
    points: usize,
) -> Result<DynamicRangeTable> {
    if !(omega_from.is_finite() && omega_to.is_finite() && omega_from < omega_to) {
        return Err(Error::InvalidRange(format!(
            "need finite omega_from < omega_to, got {omega_from} and {omega_to}"
        )));
    }
    if points < 2 {
        return Err(Error::InvalidRange(format!(
            "need at least 2 points, got {points}"
        )));
    }
    let model = GyroModel::new(cfg)?;
    let fog = FogConfig::matched(cfg)?;
    let lambda = operating_phase(cfg)?;
    let records = linear_grid(omega_from, omega_to, points)
        .par_iter()
        .map(|&omega| {
            let report = model.report(omega);
            DynamicRangeRecord {
                omega,
                phase: report.phase,
                alhqg: report.delta_omega_shot,
                sql: report.sql_shot,
                fog: fog_sensitivity(&fog, report.phase),
                earth_rate: EARTH_RATE,
            }
        })
        .collect();
    Ok(DynamicRangeTable {
        config: *cfg,
        operating_phase: lambda,
        omega_opt: lambda / model.beta(),
        records,
    })
}
