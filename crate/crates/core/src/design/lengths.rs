use super::phase::{operating_phase, optimal_phase_of, record_at_phase};
use super::search::{argmin, cell, golden_section_log, local_minima, log_grid, REL_TOL};
use super::{OptimumRecord, PhasePolicy};
use crate::config::GyroConfig;
use crate::error::Result;
use crate::model::GyroModel;

/// Loop lengths searched, meters.
pub const LENGTH_RANGE: (f64, f64) = (1.0, 1.0e5);
const LENGTH_POINTS: usize = 1024;
/// Attenuation ratios searched.
pub const XI_RANGE: (f64, f64) = (0.01, 3.0);
const XI_POINTS: usize = 256;

/// Per-shot sensitivity of `cfg` at loop length `length` under a phase policy.
fn length_objective(cfg: &GyroConfig, policy: PhasePolicy, fixed_phase: f64, length: f64) -> f64 {
    let Ok(model) = GyroModel::new(&cfg.with_loop_length(length)) else {
        return f64::INFINITY;
    };
    match policy {
        PhasePolicy::Operating => model.delta_omega_at_phase(fixed_phase).value(),
        PhasePolicy::PerPoint => optimal_phase_of(&model).delta_omega_shot,
    }
}

/// All interior minima of the sensitivity over loop length, ordered by length,
/// with the phase held at the design's operating phase.
///
/// The first entry is the shortest-loop optimum. A lossless loop improves
/// monotonically with length and yields an empty list.
pub fn optimal_lengths(cfg: &GyroConfig) -> Result<Vec<OptimumRecord>> {
    optimal_lengths_with(cfg, PhasePolicy::Operating)
}

pub fn optimal_lengths_with(cfg: &GyroConfig, policy: PhasePolicy) -> Result<Vec<OptimumRecord>> {
    cfg.validate()?;
    let fixed_phase = match policy {
        PhasePolicy::Operating => operating_phase(cfg)?,
        PhasePolicy::PerPoint => f64::NAN,
    };
    let objective = |length: f64| length_objective(cfg, policy, fixed_phase, length);
    let grid = log_grid(LENGTH_RANGE.0, LENGTH_RANGE.1, LENGTH_POINTS);
    let values: Vec<f64> = grid.iter().map(|&l| objective(l)).collect();
    let mut records = Vec::new();
    for index in local_minima(&values) {
        let (lo, hi) = cell(&grid, index);
        let m = golden_section_log(objective, lo, hi, REL_TOL);
        let model = GyroModel::new(&cfg.with_loop_length(m.x))?;
        let mut rec = match policy {
            PhasePolicy::Operating => record_at_phase(&model, fixed_phase, m.bracket, m.iterations),
            PhasePolicy::PerPoint => optimal_phase_of(&model),
        };
        rec.parameter = "loop_length";
        rec.value = m.x;
        rec.bracket = m.bracket;
        rec.iterations = m.iterations;
        records.push(rec);
    }
    Ok(records)
}

/// Attenuation ratio whose first length optimum is the most sensitive.
///
/// For every trial ratio the loop length is re-optimized and the
/// shortest-loop optimum taken; a log scan over `[0.01, 3]` followed by
/// golden section then minimizes that nested objective.
pub fn optimal_xi(cfg: &GyroConfig) -> Result<OptimumRecord> {
    optimal_xi_with(cfg, PhasePolicy::Operating)
}

pub fn optimal_xi_with(cfg: &GyroConfig, policy: PhasePolicy) -> Result<OptimumRecord> {
    cfg.validate()?;
    let first = |xi: f64| -> Option<OptimumRecord> {
        optimal_lengths_with(&cfg.with_attenuation_ratio(xi), policy)
            .ok()
            .and_then(|v| v.into_iter().next())
    };
    let objective = |xi: f64| first(xi).map_or(f64::INFINITY, |r| r.delta_omega_shot);
    let grid = log_grid(XI_RANGE.0, XI_RANGE.1, XI_POINTS);
    let values: Vec<f64> = {
        use rayon::prelude::*;
        grid.par_iter().map(|&xi| objective(xi)).collect()
    };
    let (lo, hi) = cell(&grid, argmin(&values));
    let m = golden_section_log(objective, lo, hi, REL_TOL);
    let rec = first(m.x).ok_or_else(|| {
        crate::Error::InvalidRange(format!(
            "no interior loop-length optimum for any attenuation ratio in [{}, {}]",
            XI_RANGE.0, XI_RANGE.1
        ))
    })?;
    Ok(OptimumRecord {
        parameter: "attenuation_ratio",
        value: m.x,
        bracket: m.bracket,
        iterations: m.iterations,
        ..rec
    })
}
