//! Gyroscope as a channel pipeline on the oracle states.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::fock::ReadoutSums;
use super::{FockOptions, FockTwoModeState, GaussianTwoModeState, Mode};
use crate::config::GyroConfig;
use crate::error::{Error, Result};
use crate::model::{
    derive_channel, fringe_argument, is_multiple_of_pi, ChannelState, PhotonMoments, Sensitivity,
};

/// Finite-difference step of [`oracle_sensitivity`], as a fraction of the fringe period `pi / beta`.
pub const FD_STEP_FRACTION: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Backend {
    Gaussian,
    Fock(FockOptions),
}

impl Backend {
    pub fn fock() -> Self {
        Backend::Fock(FockOptions::default())
    }

    pub fn name(&self) -> &'static str {
        match self {
            Backend::Gaussian => "gaussian",
            Backend::Fock(_) => "fock",
        }
    }
}

/// Output photon statistics for an explicit channel.
///
/// Pipeline: coherent `sqrt(n_in)` with spin vacuum, squeeze `(acosh G1, theta1)`,
/// Sagnac phase on the light, fiber loss `T` on the light, decay `s^2` on the
/// spin wave, squeeze `(acosh G2, theta2)`, photon statistics of the light.
/// The Fock backend reads the last squeeze out in the Heisenberg picture.
pub fn simulate_channel(
    ch: &ChannelState,
    theta_1: f64,
    theta_2: f64,
    sagnac_phase: f64,
    n_in: f64,
    backend: &Backend,
) -> Result<PhotonMoments> {
    if !(n_in >= 0.0 && n_in.is_finite()) {
        return Err(Error::InvalidOperation(format!(
            "input photon number must be >= 0, got {n_in}"
        )));
    }
    let alpha = Complex64::new(n_in.sqrt(), 0.0);
    let r_1 = ch.g_1.asinh();
    let survival_power = ch.atomic_survival * ch.atomic_survival;
    match backend {
        Backend::Gaussian => {
            let mut state = GaussianTwoModeState::coherent_vacuum(alpha);
            state.two_mode_squeeze(r_1, theta_1)?;
            state.phase(Mode::Optical, sagnac_phase);
            state.transmission(Mode::Optical, ch.transmission)?;
            state.transmission(Mode::Spin, survival_power)?;
            state.two_mode_squeeze(ch.g_2.asinh(), theta_2)?;
            Ok(state.photon_statistics(Mode::Optical))
        }
        Backend::Fock(options) => {
            let amplified = fock_first_stage(alpha, r_1, theta_1, *options)?;
            fock_readout(amplified, ch, theta_2, sagnac_phase)
        }
    }
}

fn fock_first_stage(
    alpha: Complex64,
    r_1: f64,
    theta_1: f64,
    options: FockOptions,
) -> Result<FockTwoModeState> {
    let mut state = FockTwoModeState::coherent_vacuum(alpha, options)?;
    state.two_mode_squeeze(r_1, theta_1)?;
    Ok(state)
}

/// Phase, both losses and the Heisenberg readout of the second squeeze.
///
/// The spin-wave loss is applied to one optical-loss branch at a time, so only
/// a single branch family is held in memory.
fn fock_readout(
    mut state: FockTwoModeState,
    ch: &ChannelState,
    theta_2: f64,
    sagnac_phase: f64,
) -> Result<PhotonMoments> {
    let options = *state.options();
    let r_2 = ch.g_2.asinh();
    state.phase(Mode::Optical, sagnac_phase);
    state.transmission(Mode::Optical, ch.transmission)?;
    let mut deficit = state.trace_deficit();
    let mut sums = ReadoutSums::default();
    for mut branch in state.into_components() {
        branch.transmission(Mode::Spin, ch.atomic_survival * ch.atomic_survival)?;
        deficit += branch.trace_deficit();
        sums += branch.squeezed_optical_sums(r_2, theta_2);
    }
    if deficit > options.tolerance {
        return Err(Error::TruncationInsufficient {
            tail_mass: deficit,
            tolerance: options.tolerance,
            cap: options.cap,
        });
    }
    Ok(sums.moments())
}

/// Output photon statistics of a configured gyroscope rotating at `omega` rad/s.
pub fn simulate_gyro(cfg: &GyroConfig, omega: f64, backend: &Backend) -> Result<PhotonMoments> {
    let ch = derive_channel(cfg)?;
    simulate_channel(&ch, cfg.theta_1, cfg.theta_2, ch.beta * omega, cfg.n_in, backend)
}

/// Error-propagation sensitivity from simulated moments, with a central
/// finite-difference slope.
pub fn oracle_sensitivity(cfg: &GyroConfig, omega: f64, backend: &Backend) -> Result<Sensitivity> {
    let ch = derive_channel(cfg)?;
    if is_multiple_of_pi(fringe_argument(cfg.theta_1, cfg.theta_2, ch.beta * omega)) {
        return Ok(Sensitivity::INFINITE);
    }
    let step = FD_STEP_FRACTION * PI / ch.beta;
    let at: Box<dyn Fn(f64) -> Result<PhotonMoments>> = match backend {
        Backend::Gaussian => {
            Box::new(|w: f64| simulate_channel(&ch, cfg.theta_1, cfg.theta_2, ch.beta * w, cfg.n_in, backend))
        }
        // The first stage does not depend on the rotation rate; squeeze once.
        Backend::Fock(options) => {
            let alpha = Complex64::new(cfg.n_in.sqrt(), 0.0);
            let amplified = fock_first_stage(alpha, ch.g_1.asinh(), cfg.theta_1, *options)?;
            Box::new(move |w: f64| fock_readout(amplified.clone(), &ch, cfg.theta_2, ch.beta * w))
        }
    };
    let upper = at(omega + step)?.mean;
    let lower = at(omega - step)?.mean;
    let slope = (upper - lower).abs() / (2.0 * step);
    Ok(Sensitivity::ratio(at(omega)?.variance.sqrt(), slope))
}
