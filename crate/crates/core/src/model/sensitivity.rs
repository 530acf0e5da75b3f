use std::f64::consts::PI;
use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use super::channel::{derive_channel, ChannelState};
use super::fringe::{
    fringe_argument, fringe_coefficients, mean_photon_number, photon_number_variance, signal_slope,
    FringeCoefficients,
};
use crate::config::GyroConfig;
use crate::error::Result;

/// A rotation sensitivity in rad/s (or rad/s/sqrt(Hz)) that may diverge.
///
/// Zero-slope operating points carry the infinite marker instead of a
/// division by zero; it serializes as the string `"inf"`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Sensitivity(f64);

impl Sensitivity {
    pub const INFINITE: Sensitivity = Sensitivity(f64::INFINITY);

    /// Wraps a finite, positive value; anything else becomes the infinite marker.
    pub fn new(value: f64) -> Self {
        if value.is_finite() && value > 0.0 {
            Self(value)
        } else {
            Self::INFINITE
        }
    }

    /// `numerator / denominator`, infinite when the denominator vanishes.
    pub fn ratio(numerator: f64, denominator: f64) -> Self {
        if denominator > 0.0 {
            Self::new(numerator / denominator)
        } else {
            Self::INFINITE
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    pub fn finite(self) -> Option<f64> {
        (!self.is_infinite()).then_some(self.0)
    }

    pub fn scale(self, factor: f64) -> Self {
        Self::new(self.0 * factor)
    }
}

impl fmt::Display for Sensitivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            fmt::Display::fmt(&self.0, f)
        }
    }
}

impl Serialize for Sensitivity {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_infinite() {
            serializer.serialize_str("inf")
        } else {
            serializer.serialize_f64(self.0)
        }
    }
}

impl<'de> Deserialize<'de> for Sensitivity {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct SensitivityVisitor;

        impl Visitor<'_> for SensitivityVisitor {
            type Value = Sensitivity;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a positive number or \"inf\"")
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Sensitivity, E> {
                Ok(Sensitivity::new(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Sensitivity, E> {
                Ok(Sensitivity::new(v as f64))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Sensitivity, E> {
                Ok(Sensitivity::new(v as f64))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Sensitivity, E> {
                match v {
                    "inf" => Ok(Sensitivity::INFINITE),
                    other => other
                        .parse::<f64>()
                        .map(Sensitivity::new)
                        .map_err(|_| E::invalid_value(de::Unexpected::Str(other), &self)),
                }
            }
        }

        deserializer.deserialize_any(SensitivityVisitor)
    }
}

/// True when `x` is an integer multiple of pi up to a few ulps of rounding.
pub fn is_multiple_of_pi(x: f64) -> bool {
    let k = (x / PI).round();
    (x - k * PI).abs() <= 8.0 * f64::EPSILON * x.abs().max(1.0)
}

/// Mean and variance of a photon-count distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhotonMoments {
    pub mean: f64,
    pub variance: f64,
}

impl PhotonMoments {
    /// Clamps round-off negatives to zero.
    pub fn clamped(mean: f64, variance: f64) -> Self {
        Self {
            mean: mean.max(0.0),
            variance: variance.max(0.0),
        }
    }
}

/// One evaluated operating point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SensitivityReport {
    /// Rotation rate in rad/s.
    pub omega: f64,
    /// Sagnac phase `beta * omega` in radians.
    pub phase: f64,
    pub delta_omega_shot: Sensitivity,
    pub delta_omega_hz: Sensitivity,
    pub sql_shot: f64,
    pub enhancement: Sensitivity,
}

/// Rotation-sensitive particle number: photons plus collective excitations.
pub fn total_particle_number(gain_1: f64, n_in: f64) -> f64 {
    let g_sq = (gain_1 - 1.0) * (gain_1 + 1.0);
    g_sq * (1.0 + n_in) + g_sq + gain_1 * gain_1 * n_in
}

/// Standard quantum limit `1 / (beta sqrt(N))` per shot.
pub fn standard_quantum_limit(beta: f64, n_tot: f64) -> f64 {
    1.0 / (beta * n_tot.sqrt())
}

/// Analytic gyroscope model with the channel derived once.
#[derive(Debug, Clone, Copy)]
pub struct GyroModel {
    cfg: GyroConfig,
    channel: ChannelState,
    sql_shot: f64,
}

impl GyroModel {
    pub fn new(cfg: &GyroConfig) -> Result<Self> {
        let channel = derive_channel(cfg)?;
        let sql_shot = standard_quantum_limit(channel.beta, total_particle_number(cfg.gain_1, cfg.n_in));
        Ok(Self {
            cfg: *cfg,
            channel,
            sql_shot,
        })
    }

    pub fn config(&self) -> &GyroConfig {
        &self.cfg
    }

    pub fn channel(&self) -> &ChannelState {
        &self.channel
    }

    pub fn beta(&self) -> f64 {
        self.channel.beta
    }

    pub fn sql_shot(&self) -> f64 {
        self.sql_shot
    }

    pub fn coefficients(&self, phase: f64) -> FringeCoefficients {
        fringe_coefficients(&self.channel, self.cfg.theta_1, self.cfg.theta_2, phase)
    }

    pub fn moments(&self, phase: f64) -> PhotonMoments {
        let fc = self.coefficients(phase);
        PhotonMoments::clamped(
            mean_photon_number(&fc, self.cfg.n_in),
            photon_number_variance(&fc, self.cfg.n_in, self.channel.atomic_survival),
        )
    }

    /// Per-shot sensitivity at a Sagnac phase, with the divergence at fringe extrema.
    pub fn delta_omega_at_phase(&self, phase: f64) -> Sensitivity {
        let arg = fringe_argument(self.cfg.theta_1, self.cfg.theta_2, phase);
        if is_multiple_of_pi(arg) {
            return Sensitivity::INFINITE;
        }
        let slope = signal_slope(&self.channel, arg, self.cfg.n_in);
        Sensitivity::ratio(self.moments(phase).variance.sqrt(), slope)
    }

    pub fn report_at_phase(&self, phase: f64) -> SensitivityReport {
        let shot = self.delta_omega_at_phase(phase);
        SensitivityReport {
            omega: phase / self.channel.beta,
            phase,
            delta_omega_shot: shot,
            delta_omega_hz: shot.scale(1.0 / self.cfg.repetition_rate.sqrt()),
            sql_shot: self.sql_shot,
            enhancement: shot.scale(1.0 / self.sql_shot),
        }
    }

    pub fn report(&self, omega: f64) -> SensitivityReport {
        SensitivityReport {
            omega,
            ..self.report_at_phase(self.channel.beta * omega)
        }
    }
}

/// Error-propagation rotation sensitivity at rotation rate `omega` (rad/s).
pub fn rotation_sensitivity(cfg: &GyroConfig, omega: f64) -> Result<SensitivityReport> {
    if !omega.is_finite() {
        return Err(crate::Error::InvalidConfig {
            field: "omega",
            reason: "must be finite".into(),
        });
    }
    Ok(GyroModel::new(cfg)?.report(omega))
}
