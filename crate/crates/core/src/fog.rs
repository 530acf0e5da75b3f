//! Fiber-optic gyroscope baseline with a coherent input and intensity readout.

use serde::{Deserialize, Serialize};

use crate::config::GyroConfig;
use crate::error::{Error, Result};
use crate::model::{derive_channel, is_multiple_of_pi, total_particle_number, Sensitivity};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FogConfig {
    /// Input photon number `|rho|^2` per shot.
    pub photon_number: f64,
    pub transmission: f64,
    /// Sagnac scale factor in seconds.
    pub beta: f64,
}

impl FogConfig {
    pub fn new(photon_number: f64, transmission: f64, beta: f64) -> Result<Self> {
        if !(photon_number > 0.0 && photon_number.is_finite()) {
            return Err(Error::InvalidConfig {
                field: "photon_number",
                reason: format!("must be > 0, got {photon_number}"),
            });
        }
        if !(transmission > 0.0 && transmission <= 1.0) {
            return Err(Error::InvalidConfig {
                field: "transmission",
                reason: format!("must lie in (0, 1], got {transmission}"),
            });
        }
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::InvalidConfig {
                field: "beta",
                reason: format!("must be > 0, got {beta}"),
            });
        }
        Ok(Self {
            photon_number,
            transmission,
            beta,
        })
    }

    /// FOG matched to a gyroscope design: same rotation-sensitive particle
    /// number, same fiber transmission, same coil.
    pub fn matched(cfg: &GyroConfig) -> Result<Self> {
        let ch = derive_channel(cfg)?;
        Self::new(
            total_particle_number(cfg.gain_1, cfg.n_in),
            ch.transmission,
            ch.beta,
        )
    }
}

/// Mean photon number at the detected coupler port.
pub fn fog_mean(cfg: &FogConfig, sagnac_phase: f64) -> f64 {
    0.5 * cfg.transmission * cfg.photon_number * (1.0 + sagnac_phase.cos())
}

/// `|d<n>/d Omega|` of [`fog_mean`].
pub fn fog_slope(cfg: &FogConfig, sagnac_phase: f64) -> f64 {
    0.5 * cfg.transmission * cfg.photon_number * cfg.beta * sagnac_phase.sin().abs()
}

/// Shot-noise variance entering the error propagation: that of the input field, `|rho|^2`.
pub fn fog_shot_noise_variance(cfg: &FogConfig) -> f64 {
    cfg.photon_number
}

/// `1 / (T |sin(beta Omega)| beta sqrt(|rho|^2) / 2)`, infinite where the slope vanishes.
pub fn fog_sensitivity(cfg: &FogConfig, sagnac_phase: f64) -> Sensitivity {
    if is_multiple_of_pi(sagnac_phase) {
        return Sensitivity::INFINITE;
    }
    Sensitivity::ratio(
        1.0,
        0.5 * cfg.transmission * sagnac_phase.sin().abs() * cfg.beta * cfg.photon_number.sqrt(),
    )
}

/// Best FOG sensitivity over phase, reached at quadrature.
pub fn fog_best_sensitivity(cfg: &FogConfig) -> f64 {
    2.0 / (cfg.transmission * cfg.beta * cfg.photon_number.sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn fog(n: f64, t: f64) -> FogConfig {
        FogConfig::new(n, t, 2.742).unwrap()
    }

    #[test]
    fn mean_examples() {
        assert_relative_eq!(fog_mean(&fog(1e8, 1.0), 0.0), 1e8);
        assert!(fog_mean(&fog(1e8, 1.0), PI).abs() < 1e-6);
        assert_relative_eq!(fog_mean(&fog(1e8, 0.5), PI / 2.0), 2.5e7, max_relative = 1e-14);
    }

    #[test]
    fn sensitivity_examples() {
        let cfg = fog(1e8, 1.0);
        assert_relative_eq!(
            fog_sensitivity(&cfg, PI / 2.0).value(),
            2.0 / (2.742 * 1e4),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            fog_sensitivity(&fog(1e8, 0.5), 0.7).value(),
            2.0 * fog_sensitivity(&cfg, 0.7).value(),
            max_relative = 1e-14
        );
        assert!(fog_sensitivity(&cfg, 0.0).is_infinite());
        assert!(fog_sensitivity(&cfg, PI).is_infinite());
        assert_eq!(
            fog_best_sensitivity(&cfg),
            fog_sensitivity(&cfg, PI / 2.0).value()
        );
    }

    #[test]
    fn matched_to_reference_design() {
        let cfg = GyroConfig::reference();
        let f = FogConfig::matched(&cfg).unwrap();
        assert_eq!(f.photon_number, total_particle_number(6.0, 1e8));
        assert_relative_eq!(f.transmission, 0.698_232_404_077_171_4, max_relative = 1e-12);
    }

    #[test]
    fn rejects_invalid() {
        assert!(FogConfig::new(0.0, 0.5, 1.0).is_err());
        assert!(FogConfig::new(1.0, 0.0, 1.0).is_err());
        assert!(FogConfig::new(1.0, 0.5, -1.0).is_err());
    }

    proptest! {
        #[test]
        fn error_propagation_reconstruction(
            n in 1.0f64..1e10,
            t in 1e-3f64..=1.0,
            phase in 1e-3f64..PI - 1e-3,
        ) {
            let cfg = fog(n, t);
            let omega = phase / cfg.beta;
            let h = 1e-6 * PI / cfg.beta;
            let numeric = ((fog_mean(&cfg, cfg.beta * (omega + h)) - fog_mean(&cfg, cfg.beta * (omega - h)))
                / (2.0 * h)).abs();
            prop_assert!(((numeric - fog_slope(&cfg, phase)) / fog_slope(&cfg, phase)).abs() < 1e-6);
            let propagated = fog_shot_noise_variance(&cfg).sqrt() / numeric;
            let closed = fog_sensitivity(&cfg, phase).value();
            prop_assert!(((propagated - closed) / closed).abs() < 1e-6);
        }

        #[test]
        fn never_beats_input_shot_noise(n in 1.0f64..1e10, t in 1e-3f64..=1.0, phase in 0.0f64..2.0 * PI) {
            let cfg = fog(n, t);
            let bound = 1.0 / (cfg.beta * n.sqrt());
            prop_assert!(fog_sensitivity(&cfg, phase).value() >= bound * (1.0 - 1e-12));
        }
    }
}
