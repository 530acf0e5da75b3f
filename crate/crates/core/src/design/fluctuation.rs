use serde::{Deserialize, Serialize};

use super::phase::operating_phase;
use crate::config::GyroConfig;
use crate::error::{Error, Result};
use crate::model::GyroModel;

/// One corner of the pump-fluctuation box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FluctuationCorner {
    pub intensity_sign: i8,
    pub detuning_sign: i8,
    pub photon_sign: i8,
    pub gain_1: f64,
    pub n_in: f64,
    pub delta_omega_hz: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FluctuationBand {
    pub rel_intensity: f64,
    pub rel_detuning: f64,
    /// Rotation rate held fixed while the pump drifts, rad/s.
    pub omega: f64,
    pub nominal_hz: f64,
    pub gain_band: [f64; 2],
    pub sensitivity_band: [f64; 2],
    pub width: f64,
    pub corners: Vec<FluctuationCorner>,
}

/// Propagates relative pump-intensity and detuning drifts to the per-sqrt(Hz)
/// sensitivity by interval corners.
///
/// The squeeze parameter scales with pump amplitude over detuning,
/// `r' = r (1 +/- intensity) / (1 -/+ detuning)`, and the input photon
/// number with intensity, `N' = N (1 +/- intensity)`; all eight sign
/// combinations are evaluated. The rotation rate stays at the nominal
/// operating point `Lambda / beta`, as a drifting pump does not retune it.
pub fn fluctuation_band(cfg: &GyroConfig, rel_intensity: f64, rel_detuning: f64) -> Result<FluctuationBand> {
    for (field, v) in [("rel_intensity", rel_intensity), ("rel_detuning", rel_detuning)] {
        if !(v.is_finite() && (0.0..1.0).contains(&v)) {
            return Err(Error::InvalidConfig {
                field,
                reason: format!("must lie in [0, 1), got {v}"),
            });
        }
    }
    let nominal = GyroModel::new(cfg)?;
    let omega = operating_phase(cfg)? / nominal.beta();
    let r = cfg.gain_1.acosh();
    let mut corners = Vec::with_capacity(8);
    for intensity_sign in [-1i8, 1] {
        for detuning_sign in [-1i8, 1] {
            for photon_sign in [-1i8, 1] {
                let r_corner = r * (1.0 + f64::from(intensity_sign) * rel_intensity)
                    / (1.0 - f64::from(detuning_sign) * rel_detuning);
                let gain_1 = r_corner.cosh();
                let n_in = cfg.n_in * (1.0 + f64::from(photon_sign) * rel_intensity);
                let model = GyroModel::new(&cfg.with_gain(gain_1).with_n_in(n_in))?;
                corners.push(FluctuationCorner {
                    intensity_sign,
                    detuning_sign,
                    photon_sign,
                    gain_1,
                    n_in,
                    delta_omega_hz: model.report(omega).delta_omega_hz.value(),
                });
            }
        }
    }
    let span = |f: fn(&FluctuationCorner) -> f64| {
        corners
            .iter()
            .map(f)
            .fold([f64::INFINITY, f64::NEG_INFINITY], |[lo, hi], v| {
                [lo.min(v), hi.max(v)]
            })
    };
    let gain_band = span(|c| c.gain_1);
    let sensitivity_band = span(|c| c.delta_omega_hz);
    Ok(FluctuationBand {
        rel_intensity,
        rel_detuning,
        omega,
        nominal_hz: nominal.report(omega).delta_omega_hz.value(),
        gain_band,
        sensitivity_band,
        width: sensitivity_band[1] - sensitivity_band[0],
        corners,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_fluctuation_is_degenerate() {
        let band = fluctuation_band(&GyroConfig::reference(), 0.0, 0.0).unwrap();
        assert_eq!(band.gain_band[0], band.gain_band[1]);
        assert_eq!(band.width, 0.0);
        assert!((band.sensitivity_band[0] - band.nominal_hz).abs() < 1e-12 * band.nominal_hz);
    }

    #[test]
    fn band_brackets_nominal() {
        let band = fluctuation_band(&GyroConfig::reference(), 1e-3, 1e-3).unwrap();
        assert_eq!(band.corners.len(), 8);
        assert!(band.gain_band[0] < 6.0 && 6.0 < band.gain_band[1]);
        assert!(band.sensitivity_band[0] <= band.nominal_hz && band.nominal_hz <= band.sensitivity_band[1]);
    }

    #[test]
    fn rejects_negative_fractions() {
        assert!(fluctuation_band(&GyroConfig::reference(), -1e-3, 0.0).is_err());
    }
}
