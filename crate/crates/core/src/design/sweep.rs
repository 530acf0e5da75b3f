use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::phase::{operating_phase, optimal_phase_of};
use super::search::{linear_grid, log_grid};
use super::PhasePolicy;
use crate::config::GyroConfig;
use crate::error::{Error, Result};
use crate::model::{enhancement_factor, GyroModel, Sensitivity, SensitivityReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    /// Sagnac phase `beta Omega`, radians.
    Phase,
    /// Loop length, meters.
    Length,
    /// Attenuation ratio.
    Xi,
    /// Rotation rate, rad/s.
    Omega,
    /// First-stage gain.
    Gain,
}

impl SweepVariable {
    pub fn name(self) -> &'static str {
        match self {
            SweepVariable::Phase => "phase",
            SweepVariable::Length => "length",
            SweepVariable::Xi => "xi",
            SweepVariable::Omega => "omega",
            SweepVariable::Gain => "gain",
        }
    }
}

impl fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SweepVariable {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "phase" => Ok(SweepVariable::Phase),
            "length" => Ok(SweepVariable::Length),
            "xi" => Ok(SweepVariable::Xi),
            "omega" => Ok(SweepVariable::Omega),
            "gain" => Ok(SweepVariable::Gain),
            other => Err(Error::InvalidRange(format!("unknown sweep variable `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scale {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub variable: SweepVariable,
    pub from: f64,
    pub to: f64,
    pub points: usize,
    pub scale: Scale,
    #[serde(default)]
    pub phase_policy: PhasePolicy,
}

impl SweepSpec {
    pub fn new(variable: SweepVariable, from: f64, to: f64, points: usize, scale: Scale) -> Self {
        Self {
            variable,
            from,
            to,
            points,
            scale,
            phase_policy: PhasePolicy::Operating,
        }
    }

    pub fn with_phase_policy(self, phase_policy: PhasePolicy) -> Self {
        Self { phase_policy, ..self }
    }

    pub fn samples(&self) -> Result<Vec<f64>> {
        if !(self.from.is_finite() && self.to.is_finite() && self.from < self.to) {
            return Err(Error::InvalidRange(format!(
                "need finite from < to, got from = {}, to = {}",
                self.from, self.to
            )));
        }
        if self.points < 2 {
            return Err(Error::InvalidRange(format!(
                "need at least 2 points, got {}",
                self.points
            )));
        }
        let xs = match self.scale {
            Scale::Linear => linear_grid(self.from, self.to, self.points),
            Scale::Log => {
                if self.from <= 0.0 {
                    return Err(Error::InvalidRange(format!(
                        "log scale needs from > 0, got {}",
                        self.from
                    )));
                }
                log_grid(self.from, self.to, self.points)
            }
        };
        if !xs.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidRange(format!(
                "{} points between {} and {} are not strictly increasing",
                self.points, self.from, self.to
            )));
        }
        Ok(xs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    /// Value of the swept variable.
    pub x: f64,
    pub report: SensitivityReport,
    /// Lossless enhancement factor `K(G, beta Omega)`.
    pub k_factor: Sensitivity,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub variable: SweepVariable,
    pub spec: SweepSpec,
    pub config: GyroConfig,
    pub records: Vec<SweepRecord>,
}

fn evaluate(cfg: &GyroConfig, spec: &SweepSpec, fixed_phase: Option<f64>, x: f64) -> Result<SweepRecord> {
    let point_cfg = match spec.variable {
        SweepVariable::Length => cfg.with_loop_length(x),
        SweepVariable::Xi => cfg.with_attenuation_ratio(x),
        SweepVariable::Gain => cfg.with_gain(x),
        SweepVariable::Phase | SweepVariable::Omega => *cfg,
    };
    let model = GyroModel::new(&point_cfg)?;
    let report = match spec.variable {
        SweepVariable::Phase => model.report_at_phase(x),
        SweepVariable::Omega => model.report(x),
        SweepVariable::Length | SweepVariable::Xi | SweepVariable::Gain => {
            let phase = match (spec.phase_policy, fixed_phase) {
                (PhasePolicy::Operating, Some(phase)) => phase,
                (PhasePolicy::Operating, None) => operating_phase(&point_cfg)?,
                (PhasePolicy::PerPoint, _) => optimal_phase_of(&model).phase,
            };
            model.report_at_phase(phase)
        }
    };
    Ok(SweepRecord {
        x,
        report,
        k_factor: enhancement_factor(point_cfg.gain_1, report.phase),
    })
}

/// Evaluates the sensitivity along one variable; points run in parallel and
/// come back in sample order.
///
/// Phase and rotation-rate sweeps evaluate the configured design directly.
/// Length and attenuation-ratio sweeps hold the operating phase (or
/// re-optimize it per point under [`PhasePolicy::PerPoint`]); gain sweeps use
/// each gain's own operating phase.
pub fn sweep(cfg: &GyroConfig, spec: &SweepSpec) -> Result<SweepTable> {
    cfg.validate()?;
    let xs = spec.samples()?;
    let fixed_phase = match (spec.variable, spec.phase_policy) {
        (SweepVariable::Length | SweepVariable::Xi, PhasePolicy::Operating) => Some(operating_phase(cfg)?),
        _ => None,
    };
    let records = xs
        .par_iter()
        .map(|&x| evaluate(cfg, spec, fixed_phase, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable {
        variable: spec.variable,
        spec: *spec,
        config: *cfg,
        records,
    })
}
