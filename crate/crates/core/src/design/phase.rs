use std::f64::consts::PI;

use super::search::{argmin, cell, golden_section_log, log_grid, REL_TOL};
use super::OptimumRecord;
use crate::config::GyroConfig;
use crate::error::Result;
use crate::model::GyroModel;

const SCAN_POINTS: usize = 512;

/// Minimizes the per-shot sensitivity over the Sagnac phase in `(0, pi)`.
///
/// A 512-point log-spaced scan locates the basin, then golden section in
/// `ln(beta Omega)` narrows it to a relative bracket of `1e-12`.
pub fn optimal_phase(cfg: &GyroConfig) -> Result<OptimumRecord> {
    let model = GyroModel::new(cfg)?;
    Ok(optimal_phase_of(&model))
}

pub(crate) fn optimal_phase_of(model: &GyroModel) -> OptimumRecord {
    let objective = |phase: f64| model.delta_omega_at_phase(phase).value();
    let grid = log_grid(PI * 1e-6, PI * (1.0 - 1e-9), SCAN_POINTS);
    let values: Vec<f64> = grid.iter().map(|&x| objective(x)).collect();
    let (lo, hi) = cell(&grid, argmin(&values));
    let m = golden_section_log(objective, lo, hi, REL_TOL);
    record_at_phase(model, m.x, m.bracket, m.iterations)
}

pub(crate) fn record_at_phase(
    model: &GyroModel,
    phase: f64,
    bracket: [f64; 2],
    iterations: usize,
) -> OptimumRecord {
    let report = model.report_at_phase(phase);
    let cfg = model.config();
    OptimumRecord {
        parameter: "phase",
        value: phase,
        phase,
        omega: report.omega,
        loop_length: cfg.loop_length,
        attenuation_ratio: cfg.attenuation_ratio,
        delta_omega_shot: report.delta_omega_shot.value(),
        delta_omega_hz: report.delta_omega_hz.value(),
        bracket,
        iterations,
    }
}

/// The design's operating phase `Lambda(N_in, G)`: the optimum of the lossless
/// model with the same gain and photon number.
///
/// It depends on neither the coil geometry nor the losses, so length and
/// attenuation-ratio studies hold it fixed.
pub fn operating_phase(cfg: &GyroConfig) -> Result<f64> {
    Ok(optimal_phase(&cfg.ideal())?.value)
}
