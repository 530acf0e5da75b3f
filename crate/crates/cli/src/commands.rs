//! Subcommand bodies: each turns a resolved configuration into one artifact.

use std::f64::consts::PI;

use alhqg::design::{
    dynamic_range, fluctuation_band, operating_phase, optimal_lengths_with, optimal_phase, optimal_xi_with,
    sweep, PhasePolicy, Scale, SweepSpec, SweepVariable,
};
use alhqg::fog::{fog_best_sensitivity, fog_mean, fog_sensitivity, FogConfig};
use alhqg::model::{enhancement_factor, total_particle_number};
use alhqg::oracle::{run_suite, Backend};
use alhqg::{GyroConfig, GyroModel};
use serde_json::{json, Value};

use crate::args::{BackendName, Command, Policy, Target, Var};
use crate::output::to_csv;
use crate::CliError;

/// Result of one subcommand before it is written out.
#[derive(Debug, Clone, PartialEq)]
pub enum Artifact {
    /// JSON object; the run manifest is prepended under `manifest`.
    Json(Value),
    Csv {
        text: String,
        /// Scalars that belong with the table but not in its rows; recorded in the manifest.
        summary: Option<Value>,
    },
    /// A JSON report whose verdict decides the exit status.
    Verdict { report: Value, passed: bool },
}

fn policy(p: Policy) -> PhasePolicy {
    match p {
        Policy::Operating => PhasePolicy::Operating,
        Policy::PerPoint => PhasePolicy::PerPoint,
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(|e| CliError::Internal(e.to_string()))
}

/// Most sensitive rotation rate of the design, `Lambda / beta`.
fn operating_omega(cfg: &GyroConfig, model: &GyroModel) -> Result<f64, CliError> {
    Ok(operating_phase(cfg)? / model.beta())
}

pub fn execute(command: &Command, cfg: &GyroConfig) -> Result<Artifact, CliError> {
    match *command {
        Command::Sensitivity { omega } => sensitivity(cfg, omega),
        Command::Sweep {
            var,
            from,
            to,
            points,
            log,
            phase_policy,
        } => sweep_table(cfg, var, from, to, points, log, policy(phase_policy)),
        Command::Optimize { target, phase_policy } => optimize(cfg, target, policy(phase_policy)),
        Command::DynamicRange { from, to, points } => dynamic(cfg, from, to, points),
        Command::Fluctuation { intensity, detuning } => Ok(Artifact::Json(
            json!({ "fluctuation": to_value(&fluctuation_band(cfg, intensity, detuning)?)? }),
        )),
        Command::Fog { omega } => fog(cfg, omega),
        Command::Verify { backend } => verify(backend),
    }
}

fn sensitivity(cfg: &GyroConfig, omega: Option<f64>) -> Result<Artifact, CliError> {
    let model = GyroModel::new(cfg)?;
    let omega = match omega {
        Some(w) if w.is_finite() => w,
        Some(w) => return Err(CliError::Usage(format!("--omega must be finite, got {w}"))),
        None => operating_omega(cfg, &model)?,
    };
    let report = model.report(omega);
    let moments = model.moments(report.phase);
    Ok(Artifact::Json(json!({
        "report": to_value(&report)?,
        "moments": to_value(&moments)?,
        "k_factor": to_value(&enhancement_factor(cfg.gain_1, report.phase))?,
        "total_particle_number": total_particle_number(cfg.gain_1, cfg.n_in),
        "channel": to_value(model.channel())?,
    })))
}

fn sweep_table(
    cfg: &GyroConfig,
    var: Var,
    from: f64,
    to: f64,
    points: usize,
    log: bool,
    phase_policy: PhasePolicy,
) -> Result<Artifact, CliError> {
    let variable = match var {
        Var::Phase => SweepVariable::Phase,
        Var::Length => SweepVariable::Length,
        Var::Xi => SweepVariable::Xi,
        Var::Omega => SweepVariable::Omega,
        Var::Gain => SweepVariable::Gain,
    };
    let scale = if log { Scale::Log } else { Scale::Linear };
    let spec = SweepSpec::new(variable, from, to, points, scale).with_phase_policy(phase_policy);
    let table = sweep(cfg, &spec)?;
    let header = [
        variable.name(),
        "omega",
        "phase",
        "delta_omega_shot",
        "delta_omega_hz",
        "sql_shot",
        "enhancement",
        "k_factor",
    ];
    let rows: Vec<Vec<f64>> = table
        .records
        .iter()
        .map(|r| {
            vec![
                r.x,
                r.report.omega,
                r.report.phase,
                r.report.delta_omega_shot.value(),
                r.report.delta_omega_hz.value(),
                r.report.sql_shot,
                r.report.enhancement.value(),
                r.k_factor.value(),
            ]
        })
        .collect();
    Ok(Artifact::Csv {
        text: to_csv(&header, &rows)?,
        summary: Some(json!({ "spec": to_value(&spec)? })),
    })
}

fn optimize(cfg: &GyroConfig, target: Target, phase_policy: PhasePolicy) -> Result<Artifact, CliError> {
    let mut out = serde_json::Map::new();
    out.insert("phase_policy".into(), to_value(&phase_policy)?);
    if matches!(target, Target::Phase | Target::All) {
        out.insert("operating_phase".into(), json!(operating_phase(cfg)?));
        out.insert("phase".into(), to_value(&optimal_phase(cfg)?)?);
    }
    if matches!(target, Target::Length | Target::All) {
        let minima = optimal_lengths_with(cfg, phase_policy)?;
        let first = match minima.first() {
            Some(m) => {
                let at = GyroModel::new(&cfg.with_loop_length(m.loop_length))?;
                let fog = FogConfig::matched(at.config())?;
                json!({
                    "record": to_value(m)?,
                    "sql_shot": at.sql_shot(),
                    "fog_best_shot": fog_best_sensitivity(&fog),
                })
            }
            None => Value::Null,
        };
        out.insert("lengths".into(), to_value(&minima)?);
        out.insert("first_optimum".into(), first);
    }
    if matches!(target, Target::Xi | Target::All) {
        out.insert("xi".into(), to_value(&optimal_xi_with(cfg, phase_policy)?)?);
    }
    Ok(Artifact::Json(Value::Object(out)))
}

fn dynamic(
    cfg: &GyroConfig,
    from: Option<f64>,
    to: Option<f64>,
    points: usize,
) -> Result<Artifact, CliError> {
    let model = GyroModel::new(cfg)?;
    let from = from.unwrap_or(0.0);
    let to = to.unwrap_or(PI / model.beta());
    let table = dynamic_range(cfg, from, to, points)?;
    let header = ["omega", "phase", "alhqg", "sql", "fog", "earth_rate"];
    let rows: Vec<Vec<f64>> = table
        .records
        .iter()
        .map(|r| {
            vec![
                r.omega,
                r.phase,
                r.alhqg.value(),
                r.sql,
                r.fog.value(),
                r.earth_rate,
            ]
        })
        .collect();
    Ok(Artifact::Csv {
        text: to_csv(&header, &rows)?,
        summary: Some(json!({
            "operating_phase": table.operating_phase,
            "omega_opt": table.omega_opt,
        })),
    })
}

fn fog(cfg: &GyroConfig, omega: Option<f64>) -> Result<Artifact, CliError> {
    let model = GyroModel::new(cfg)?;
    let omega = match omega {
        Some(w) if w.is_finite() => w,
        Some(w) => return Err(CliError::Usage(format!("--omega must be finite, got {w}"))),
        None => operating_omega(cfg, &model)?,
    };
    let fog = FogConfig::matched(cfg)?;
    let phase = model.beta() * omega;
    let report = model.report(omega);
    Ok(Artifact::Json(json!({
        "fog": to_value(&fog)?,
        "omega": omega,
        "phase": phase,
        "mean": fog_mean(&fog, phase),
        "delta_omega_shot": to_value(&fog_sensitivity(&fog, phase))?,
        "best_delta_omega_shot": fog_best_sensitivity(&fog),
        "sql_shot": model.sql_shot(),
        "alhqg_delta_omega_shot": to_value(&report.delta_omega_shot)?,
    })))
}

fn verify(backend: BackendName) -> Result<Artifact, CliError> {
    let backend = match backend {
        BackendName::Gaussian => Backend::Gaussian,
        BackendName::Fock => Backend::fock(),
    };
    match run_suite(&backend) {
        Ok(report) => Ok(Artifact::Verdict {
            passed: report.passed,
            report: to_value(&report)?,
        }),
        // A suite that cannot run (e.g. truncation) is a failed verification.
        Err(e) => Err(CliError::Verification(e.to_string())),
    }
}
