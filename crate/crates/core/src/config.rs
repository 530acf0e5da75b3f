//! User-facing physical configuration of the gyroscope.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Physical parameters of one gyroscope design.
///
/// Units: wavelength, loop diameter and loop length in meters, fiber loss in
/// dB/km, pump phases in radians, repetition rate in Hz. `attenuation_ratio`
/// is the spin-wave decay rate over the fiber loss rate, both per unit loop
/// length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GyroConfig {
    /// Mean Stokes photon number per shot.
    pub n_in: f64,
    /// First-stage amplitude gain, `>= 1`.
    pub gain_1: f64,
    pub wavelength: f64,
    pub loop_diameter: f64,
    pub loop_length: f64,
    pub fiber_attenuation_db_per_km: f64,
    pub attenuation_ratio: f64,
    #[serde(default = "default_theta_1")]
    pub theta_1: f64,
    #[serde(default)]
    pub theta_2: f64,
    pub repetition_rate: f64,
}

fn default_theta_1() -> f64 {
    PI
}

impl GyroConfig {
    /// The reference design: 10^8 photons per shot, G1 = 6, 795 nm, 0.2 m coil,
    /// 520 m of 3 dB/km fiber, ratio 0.7, 10 kHz repetition.
    pub fn reference() -> Self {
        Self {
            n_in: 1.0e8,
            gain_1: 6.0,
            wavelength: 795.0e-9,
            loop_diameter: 0.2,
            loop_length: 520.0,
            fiber_attenuation_db_per_km: 3.0,
            attenuation_ratio: 0.7,
            theta_1: PI,
            theta_2: 0.0,
            repetition_rate: 1.0e4,
        }
    }

    /// Same geometry and gain with every loss switched off.
    pub fn ideal(&self) -> Self {
        Self {
            fiber_attenuation_db_per_km: 0.0,
            ..*self
        }
    }

    pub fn with_loop_length(&self, loop_length: f64) -> Self {
        Self { loop_length, ..*self }
    }

    pub fn with_attenuation_ratio(&self, attenuation_ratio: f64) -> Self {
        Self {
            attenuation_ratio,
            ..*self
        }
    }

    pub fn with_gain(&self, gain_1: f64) -> Self {
        Self { gain_1, ..*self }
    }

    pub fn with_n_in(&self, n_in: f64) -> Self {
        Self { n_in, ..*self }
    }

    pub fn validate(&self) -> Result<()> {
        fn check(ok: bool, field: &'static str, reason: &str) -> Result<()> {
            if ok {
                Ok(())
            } else {
                Err(Error::InvalidConfig {
                    field,
                    reason: reason.to_string(),
                })
            }
        }
        let finite = [
            ("n_in", self.n_in),
            ("gain_1", self.gain_1),
            ("wavelength", self.wavelength),
            ("loop_diameter", self.loop_diameter),
            ("loop_length", self.loop_length),
            ("fiber_attenuation_db_per_km", self.fiber_attenuation_db_per_km),
            ("attenuation_ratio", self.attenuation_ratio),
            ("theta_1", self.theta_1),
            ("theta_2", self.theta_2),
            ("repetition_rate", self.repetition_rate),
        ];
        for (field, value) in finite {
            check(value.is_finite(), field, "must be finite")?;
        }
        check(self.n_in > 0.0, "n_in", "must be > 0")?;
        check(self.gain_1 >= 1.0, "gain_1", "must be >= 1")?;
        check(self.wavelength > 0.0, "wavelength", "must be > 0")?;
        check(self.loop_diameter > 0.0, "loop_diameter", "must be > 0")?;
        check(self.loop_length > 0.0, "loop_length", "must be > 0")?;
        check(
            self.fiber_attenuation_db_per_km >= 0.0,
            "fiber_attenuation_db_per_km",
            "must be >= 0",
        )?;
        check(self.attenuation_ratio >= 0.0, "attenuation_ratio", "must be >= 0")?;
        check(self.repetition_rate > 0.0, "repetition_rate", "must be > 0")?;
        Ok(())
    }
}

impl Default for GyroConfig {
    fn default() -> Self {
        Self::reference()
    }
}
