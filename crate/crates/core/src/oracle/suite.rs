//! Shipped oracle-versus-analytic verification cases.

use std::f64::consts::PI;

use serde::Serialize;

use super::{oracle_sensitivity, simulate_channel, Backend};
use crate::config::GyroConfig;
use crate::error::Result;
use crate::model::{
    derive_channel, fringe_coefficients, mean_photon_number, photon_number_variance, rotation_sensitivity,
    ChannelState,
};

#[derive(Debug, Clone, Serialize)]
pub struct CaseOutcome {
    pub name: String,
    pub quantity: &'static str,
    pub analytic: f64,
    pub oracle: f64,
    pub relative_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub backend: &'static str,
    pub cases: Vec<CaseOutcome>,
    pub passed: bool,
}

fn relative(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        (a - b).abs() / b.abs().max(a.abs())
    }
}

fn outcome(name: &str, quantity: &'static str, analytic: f64, oracle: f64, tolerance: f64) -> CaseOutcome {
    let relative_error = relative(oracle, analytic);
    CaseOutcome {
        name: name.to_string(),
        quantity,
        analytic,
        oracle,
        relative_error,
        tolerance,
        passed: relative_error <= tolerance,
    }
}

struct Case {
    name: &'static str,
    gain_1: f64,
    transmission: f64,
    atomic_survival: f64,
    theta_1: f64,
    theta_2: f64,
    phase: f64,
    n_in: f64,
}

#[rustfmt::skip]
fn gaussian_cases() -> Vec<Case> {
    let reference = derive_channel(&GyroConfig::reference()).expect("reference config is valid");
    vec![
        Case { name: "dark-fringe-lossless", gain_1: 6.0, transmission: 1.0, atomic_survival: 1.0, theta_1: PI, theta_2: 0.0, phase: 0.0, n_in: 1e8 },
        Case { name: "bright-fringe-lossless", gain_1: 6.0, transmission: 1.0, atomic_survival: 1.0, theta_1: PI, theta_2: 0.0, phase: PI, n_in: 1e8 },
        Case { name: "reference-operating-point", gain_1: 6.0, transmission: reference.transmission, atomic_survival: reference.atomic_survival, theta_1: PI, theta_2: 0.0, phase: 0.0288, n_in: 1e8 },
        Case { name: "reference-quarter-fringe", gain_1: 6.0, transmission: reference.transmission, atomic_survival: reference.atomic_survival, theta_1: PI, theta_2: 0.0, phase: 0.5 * PI, n_in: 1e8 },
        Case { name: "strong-loss-high-gain", gain_1: 8.0, transmission: 0.05, atomic_survival: 0.2, theta_1: 0.3, theta_2: 2.1, phase: 1.7, n_in: 3e7 },
        Case { name: "vacuum-input", gain_1: 3.0, transmission: 0.6, atomic_survival: 0.8, theta_1: PI, theta_2: 0.0, phase: 0.4, n_in: 0.0 },
        Case { name: "unit-gain", gain_1: 1.0, transmission: 0.7, atomic_survival: 0.5, theta_1: PI, theta_2: 0.0, phase: 1.0, n_in: 1e5 },
    ]
}

#[rustfmt::skip]
fn fock_cases() -> Vec<Case> {
    vec![
        Case { name: "fock-lossless", gain_1: 1.2, transmission: 1.0, atomic_survival: 1.0, theta_1: PI, theta_2: 0.0, phase: 0.6, n_in: 4.0 },
        Case { name: "fock-lossy", gain_1: 1.5, transmission: 0.6, atomic_survival: 0.7, theta_1: PI, theta_2: 0.0, phase: 1.1, n_in: 4.0 },
        Case { name: "fock-bright", gain_1: 1.5, transmission: 0.9, atomic_survival: 0.95, theta_1: PI, theta_2: 0.0, phase: PI, n_in: 4.0 },
        Case { name: "fock-skewed-pumps", gain_1: 1.3, transmission: 0.3, atomic_survival: 0.4, theta_1: 0.8, theta_2: 2.9, phase: 4.0, n_in: 2.0 },
    ]
}

/// Runs the shipped case set: photon moments against the closed forms and,
/// for the Gaussian backend, the reference-config sensitivity against error
/// propagation with a finite-difference slope.
pub fn run_suite(backend: &Backend) -> Result<SuiteReport> {
    let (cases, mean_tol, var_tol) = match backend {
        Backend::Gaussian => (gaussian_cases(), 1e-12, 1e-9),
        Backend::Fock(_) => (fock_cases(), 1e-2, 1e-2),
    };
    let mut outcomes = Vec::new();
    for case in &cases {
        let ch = ChannelState::from_losses(case.gain_1, case.transmission, case.atomic_survival, 1.0)?;
        let fc = fringe_coefficients(&ch, case.theta_1, case.theta_2, case.phase);
        let sim = simulate_channel(&ch, case.theta_1, case.theta_2, case.phase, case.n_in, backend)?;
        outcomes.push(outcome(
            case.name,
            "mean",
            mean_photon_number(&fc, case.n_in),
            sim.mean,
            mean_tol,
        ));
        outcomes.push(outcome(
            case.name,
            "variance",
            photon_number_variance(&fc, case.n_in, ch.atomic_survival),
            sim.variance,
            var_tol,
        ));
    }
    if matches!(backend, Backend::Gaussian) {
        let cfg = GyroConfig::reference();
        for (name, omega) in [
            ("reference-sensitivity-optimum", 1.05e-2),
            ("reference-sensitivity-quarter", 0.5),
        ] {
            let analytic = rotation_sensitivity(&cfg, omega)?.delta_omega_shot.value();
            let oracle = oracle_sensitivity(&cfg, omega, backend)?.value();
            outcomes.push(outcome(name, "delta_omega_shot", analytic, oracle, 1e-5));
        }
    }
    let passed = outcomes.iter().all(|c| c.passed);
    Ok(SuiteReport {
        backend: backend.name(),
        cases: outcomes,
        passed,
    })
}
