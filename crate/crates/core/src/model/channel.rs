use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::config::GyroConfig;
use crate::error::{Error, Result};

/// Speed of light in vacuum, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Converts a fiber loss in dB/km to a natural-log attenuation coefficient per meter.
pub fn db_per_km_to_natural(db_per_km: f64) -> f64 {
    db_per_km * std::f64::consts::LN_10 / 10.0 / 1000.0
}

/// Sagnac scale factor `2 pi D L / (lambda c)` in seconds.
pub fn sagnac_scale(loop_diameter: f64, loop_length: f64, wavelength: f64) -> f64 {
    2.0 * PI * loop_diameter * loop_length / (wavelength * SPEED_OF_LIGHT)
}

/// Loss, decay and gain figures of one pass around the loop.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelState {
    pub transmission: f64,
    pub reflectance: f64,
    /// Amplitude survival of the spin wave while the light is in the loop.
    pub atomic_survival: f64,
    pub beta: f64,
    pub gain_1: f64,
    pub gain_2: f64,
    pub g_1: f64,
    pub g_2: f64,
}

impl ChannelState {
    /// Builds a channel from independent loss figures.
    ///
    /// The second-stage gain follows from the write beam losing amplitude by
    /// `sqrt(T)` around the loop: `G2 = cosh(sqrt(T) * acosh(G1))`.
    pub fn from_losses(gain_1: f64, transmission: f64, atomic_survival: f64, beta: f64) -> Result<Self> {
        if !(gain_1 >= 1.0 && gain_1.is_finite()) {
            return Err(Error::InvalidConfig {
                field: "gain_1",
                reason: format!("must be >= 1, got {gain_1}"),
            });
        }
        if !(transmission > 0.0 && transmission <= 1.0) {
            return Err(Error::InvalidConfig {
                field: "transmission",
                reason: format!("must lie in (0, 1], got {transmission}"),
            });
        }
        if !(atomic_survival > 0.0 && atomic_survival <= 1.0) {
            return Err(Error::InvalidConfig {
                field: "atomic_survival",
                reason: format!("must lie in (0, 1], got {atomic_survival}"),
            });
        }
        if !(beta > 0.0 && beta.is_finite()) {
            return Err(Error::InvalidConfig {
                field: "beta",
                reason: format!("must be > 0, got {beta}"),
            });
        }
        // (G-1)(G+1) keeps precision for gains close to one.
        let g_1 = ((gain_1 - 1.0) * (gain_1 + 1.0)).sqrt();
        // Without loss the pump is untouched; skip the cosh/asinh round trip.
        let (gain_2, g_2) = if transmission == 1.0 {
            (gain_1, g_1)
        } else {
            let r_2 = transmission.sqrt() * g_1.asinh();
            (r_2.cosh(), r_2.sinh())
        };
        Ok(Self {
            transmission,
            reflectance: 1.0 - transmission,
            atomic_survival,
            beta,
            gain_1,
            gain_2,
            g_1,
            g_2,
        })
    }

    /// Channel with no loss at all and equal gains.
    pub fn lossless(gain: f64, beta: f64) -> Result<Self> {
        Self::from_losses(gain, 1.0, 1.0, beta)
    }
}

/// Derives the loop channel from a configuration.
///
/// The spin-wave decay over the light's transit time equals `xi * alpha * L / 2`,
/// so the survival amplitude is `T^(xi/2)` and no refractive index or decay rate
/// is needed separately.
pub fn derive_channel(cfg: &GyroConfig) -> Result<ChannelState> {
    cfg.validate()?;
    let optical_depth = db_per_km_to_natural(cfg.fiber_attenuation_db_per_km) * cfg.loop_length;
    let transmission = (-optical_depth).exp();
    let atomic_survival = (-0.5 * cfg.attenuation_ratio * optical_depth).exp();
    let beta = sagnac_scale(cfg.loop_diameter, cfg.loop_length, cfg.wavelength);
    if transmission <= 0.0 {
        return Err(Error::InvalidConfig {
            field: "loop_length",
            reason: "fiber transmission underflows to zero".into(),
        });
    }
    ChannelState::from_losses(
        cfg.gain_1,
        transmission,
        atomic_survival.max(f64::MIN_POSITIVE),
        beta,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn lossless_fiber_is_identity() {
        for xi in [0.0, 0.7, 3.0] {
            let cfg = GyroConfig {
                fiber_attenuation_db_per_km: 0.0,
                attenuation_ratio: xi,
                ..GyroConfig::reference()
            };
            let ch = derive_channel(&cfg).unwrap();
            assert_eq!(ch.transmission, 1.0);
            assert_eq!(ch.reflectance, 0.0);
            assert_eq!(ch.atomic_survival, 1.0);
            assert_relative_eq!(ch.gain_2, ch.gain_1, max_relative = 1e-15);
        }
    }

    #[test]
    fn no_atomic_decay_without_ratio() {
        for length in [1.0, 520.0, 1.0e4] {
            let cfg = GyroConfig::reference()
                .with_attenuation_ratio(0.0)
                .with_loop_length(length);
            assert_eq!(derive_channel(&cfg).unwrap().atomic_survival, 1.0);
        }
    }

    #[test]
    fn reference_channel_values() {
        // Reference figures from an independent 30-digit evaluation of the same formulas.
        let ch = derive_channel(&GyroConfig::reference()).unwrap();
        assert_relative_eq!(ch.transmission, 0.698_232_404_077_171_4, max_relative = 1e-12);
        assert_relative_eq!(ch.atomic_survival, 0.881_860_722_821_753_5, max_relative = 1e-12);
        assert_relative_eq!(ch.beta, 2.741_734_368_339_307, max_relative = 1e-12);
        assert_relative_eq!(ch.gain_2, 4.027_576_733_338_845_5, max_relative = 1e-10);
        assert_relative_eq!(ch.reflectance, 1.0 - ch.transmission);
    }

    #[test]
    fn bogoliubov_normalization_and_pump_loss() {
        for &g in &[1.0, 1.0 + 1e-9, 1.5, 6.0, 8.0] {
            for &t in &[1e-3, 0.3, 0.9, 1.0] {
                let ch = ChannelState::from_losses(g, t, 0.5, 1.0).unwrap();
                for (big, small) in [(ch.gain_1, ch.g_1), (ch.gain_2, ch.g_2)] {
                    assert_relative_eq!(big * big - small * small, 1.0, max_relative = 1e-12);
                }
                assert!(ch.gain_2 <= ch.gain_1 * (1.0 + 1e-15));
            }
        }
    }

    #[test]
    fn rejects_out_of_range_losses() {
        assert!(ChannelState::from_losses(2.0, 0.0, 1.0, 1.0).is_err());
        assert!(ChannelState::from_losses(2.0, 1.1, 1.0, 1.0).is_err());
        assert!(ChannelState::from_losses(2.0, 0.5, 0.0, 1.0).is_err());
        assert!(ChannelState::from_losses(0.9, 0.5, 0.5, 1.0).is_err());
    }
}
