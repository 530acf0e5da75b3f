use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::channel::ChannelState;

/// Output-mode coefficients of the optical port after the second amplifier.
///
/// The detected field is `a3 = a1 a0 + b1 S0^dag + c1 V + d1 F^dag`, with `V`
/// the fiber vacuum port and `F` the spin-wave Langevin noise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FringeCoefficients {
    pub a1: Complex64,
    pub b1: Complex64,
    pub c1: Complex64,
    pub d1: Complex64,
    pub a1_sq: f64,
    pub b1_sq: f64,
    pub c1_sq: f64,
    pub d1_sq: f64,
    pub sagnac_phase: f64,
    pub atomic_survival: f64,
}

impl FringeCoefficients {
    /// Langevin noise power `<F F^dag> = 1 - s^2` carried by `d1`.
    pub fn langevin_weight(&self) -> f64 {
        1.0 - self.atomic_survival * self.atomic_survival
    }

    /// Mean photons injected by the Langevin port, `|D1|^2 (1 - s^2)`.
    pub fn langevin_floor(&self) -> f64 {
        self.d1_sq * self.langevin_weight()
    }

    /// `|A1|^2 - |B1|^2 + |C1|^2 - |D1|^2 (1 - s^2)`; equals one for a bosonic output mode.
    pub fn commutator(&self) -> f64 {
        self.a1_sq - self.b1_sq + self.c1_sq - self.langevin_floor()
    }
}

/// Fringe argument measured from the dark fringe: `beta Omega + theta1 - theta2 - pi`.
pub fn fringe_argument(theta_1: f64, theta_2: f64, sagnac_phase: f64) -> f64 {
    sagnac_phase + theta_1 - theta_2 - PI
}

/// Output coefficients for a given Sagnac phase `beta Omega`.
///
/// Only the clockwise/counter-clockwise phase difference is kept; the common
/// propagation phase is dropped.
pub fn fringe_coefficients(
    ch: &ChannelState,
    theta_1: f64,
    theta_2: f64,
    sagnac_phase: f64,
) -> FringeCoefficients {
    let ChannelState {
        transmission: t,
        reflectance,
        atomic_survival: s,
        gain_1,
        gain_2,
        g_1,
        g_2,
        ..
    } = *ch;
    let sqrt_t = t.sqrt();
    let a1 = Complex64::from_polar(sqrt_t * gain_1 * gain_2, sagnac_phase)
        + Complex64::from_polar(g_1 * g_2 * s, theta_2 - theta_1);
    let b1 = Complex64::from_polar(sqrt_t * g_1 * gain_2, sagnac_phase + theta_1)
        + Complex64::from_polar(gain_1 * g_2 * s, theta_2);
    let c1 = Complex64::new(reflectance.sqrt() * gain_2, 0.0);
    let d1 = Complex64::from_polar(g_2, theta_2);

    // T G1^2 G2^2 + g1^2 g2^2 s^2 - 2 sqrt(T) G1 G2 g1 g2 s cos(arg), rewritten with
    // 1 - cos = 2 sin^2(arg/2) so the dark-fringe cancellation happens in amplitudes.
    let half = (0.5 * fringe_argument(theta_1, theta_2, sagnac_phase)).sin();
    let fringe = 4.0 * sqrt_t * gain_1 * gain_2 * g_1 * g_2 * s * half * half;
    let a1_sq = (sqrt_t * gain_1 * gain_2 - g_1 * g_2 * s).powi(2) + fringe;
    let b1_sq = (sqrt_t * g_1 * gain_2 - gain_1 * g_2 * s).powi(2) + fringe;

    FringeCoefficients {
        a1,
        b1,
        c1,
        d1,
        a1_sq,
        b1_sq,
        c1_sq: reflectance * gain_2 * gain_2,
        d1_sq: g_2 * g_2,
        sagnac_phase,
        atomic_survival: s,
    }
}

/// Mean detected photon number.
///
/// `|A1|^2 N + |B1|^2` plus the Langevin floor `|D1|^2 (1 - s^2)`, which the
/// spin-wave decay adds on top of the spontaneous term. The floor vanishes
/// without atomic decay.
pub fn mean_photon_number(fc: &FringeCoefficients, n_in: f64) -> f64 {
    fc.a1_sq * n_in + fc.b1_sq + fc.langevin_floor()
}

/// Photon-number variance of the detected port for a coherent input.
pub fn photon_number_variance(fc: &FringeCoefficients, n_in: f64, atomic_survival: f64) -> f64 {
    let (a, b, c, d) = (fc.a1_sq, fc.b1_sq, fc.c1_sq, fc.d1_sq);
    let langevin = 1.0 - atomic_survival * atomic_survival;
    a * a * n_in + (a * n_in + b) * c + (a * (1.0 + n_in) + c) * d * langevin + a * b * (1.0 + n_in)
}

/// `|d<n>/d Omega|` for a given fringe argument (see [`fringe_argument`]).
///
/// At the default pump phases the fringe argument is the Sagnac phase itself.
pub fn signal_slope(ch: &ChannelState, fringe_arg: f64, n_in: f64) -> f64 {
    2.0 * ch.transmission.sqrt()
        * ch.beta
        * ch.gain_1
        * ch.gain_2
        * ch.g_1
        * ch.g_2
        * ch.atomic_survival
        * fringe_arg.sin().abs()
        * (n_in + 1.0)
}
