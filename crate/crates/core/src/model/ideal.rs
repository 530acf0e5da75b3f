//! Lossless, equal-gain limit of the model for large photon numbers.

use std::f64::consts::PI;

use super::channel::SPEED_OF_LIGHT;
use super::sensitivity::{is_multiple_of_pi, Sensitivity};

/// Result of the ideal-case evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdealSensitivity {
    /// Enhancement over `1 / (beta sqrt(N_in))`.
    pub m_factor: f64,
    pub delta_omega: Sensitivity,
}

/// Signal-to-noise enhancement `M(G, beta Omega)`.
///
/// `1 - cos` is evaluated as `2 sin^2(phi/2)` so the small-phase optimum keeps
/// full precision.
pub fn m_factor(gain: f64, sagnac_phase: f64) -> f64 {
    if is_multiple_of_pi(sagnac_phase) {
        return 0.0;
    }
    let h = gain * gain * (gain - 1.0) * (gain + 1.0);
    let half = (0.5 * sagnac_phase).sin();
    let one_minus_cos = 2.0 * half * half;
    2.0 * h * sagnac_phase.sin().abs()
        / ((1.0 + 2.0 * h * one_minus_cos) * (1.0 + 4.0 * h * one_minus_cos)).sqrt()
}

/// `Delta Omega ~= 1 / (M beta sqrt(N_in))`.
pub fn ideal_sensitivity(gain: f64, n_in: f64, beta: f64, sagnac_phase: f64) -> IdealSensitivity {
    let m = m_factor(gain, sagnac_phase);
    IdealSensitivity {
        m_factor: m,
        delta_omega: Sensitivity::ratio(1.0, m * beta * n_in.sqrt()),
    }
}

/// Enhancement factor `K = sqrt(g^2 + G^2) / M`; depends on gain and phase only.
pub fn enhancement_factor(gain: f64, sagnac_phase: f64) -> Sensitivity {
    let g_sq = (gain - 1.0) * (gain + 1.0);
    Sensitivity::ratio((g_sq + gain * gain).sqrt(), m_factor(gain, sagnac_phase))
}

/// Small-angle estimate of the minimum sensitivity at the optimal phase `lambda_opt`.
///
/// Drops the `1 + 2|Gg|^2 (1 - cos)` denominators of `M`, so it is an
/// optimistic bound on [`ideal_sensitivity`] at the same phase.
pub fn min_sensitivity_ideal(
    gain: f64,
    n_in: f64,
    wavelength: f64,
    diameter: f64,
    length: f64,
    lambda_opt: f64,
) -> f64 {
    let h = gain * gain * (gain - 1.0) * (gain + 1.0);
    wavelength * SPEED_OF_LIGHT / (4.0 * PI * diameter * length * n_in.sqrt() * h * lambda_opt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const BETA: f64 = 2.741_734_368_339_307;

    #[test]
    fn unit_gain_gives_no_enhancement() {
        let r = ideal_sensitivity(1.0, 1e8, BETA, 0.3);
        assert_eq!(r.m_factor, 0.0);
        assert!(r.delta_omega.is_infinite());
        assert!(enhancement_factor(1.0, 0.3).is_infinite());
    }

    #[test]
    fn reference_point_values() {
        // 30-digit evaluation: M = 29.38618034421545, dOmega = 1.2411706131803866e-6.
        let r = ideal_sensitivity(6.0, 1e8, BETA, 0.02286);
        assert_relative_eq!(r.m_factor, 29.386_180_344_215_45, max_relative = 1e-10);
        assert_relative_eq!(
            r.delta_omega.value(),
            1.241_170_613_180_386_6e-6,
            max_relative = 1e-10
        );
        assert_relative_eq!(
            enhancement_factor(6.0, 0.02286).value(),
            0.286_738_517_033_399,
            max_relative = 1e-10
        );
    }

    #[test]
    fn min_sensitivity_reference() {
        let v = min_sensitivity_ideal(6.0, 1e8, 795e-9, 0.2, 520.0, 0.02286);
        assert_relative_eq!(v, 6.331_372_376_518_789e-7, max_relative = 1e-10);
        let doubled = min_sensitivity_ideal(6.0, 1e8, 795e-9, 0.2, 1040.0, 0.02286);
        assert_relative_eq!(doubled, v / 2.0, max_relative = 1e-15);
    }

    #[test]
    fn diverges_at_fringe_extrema() {
        assert!(enhancement_factor(6.0, 0.0).is_infinite());
        assert!(enhancement_factor(6.0, PI).is_infinite());
        assert!(ideal_sensitivity(3.0, 1e8, BETA, 2.0 * PI)
            .delta_omega
            .is_infinite());
    }

    proptest! {
        #[test]
        fn k_is_large_photon_limit_of_sql_ratio(gain in 1.01f64..10.0, phase in 1e-4f64..3.1) {
            let n_in = 1e12;
            let ratio = ideal_sensitivity(gain, n_in, BETA, phase).delta_omega.value()
                / crate::model::standard_quantum_limit(
                    BETA,
                    crate::model::total_particle_number(gain, n_in),
                );
            let k = enhancement_factor(gain, phase).value();
            prop_assert!(((ratio - k) / k).abs() < 1e-9, "ratio {} K {}", ratio, k);
        }

        #[test]
        fn small_angle_estimate_is_optimistic(gain in 1.05f64..10.0, lambda in 1e-4f64..0.5) {
            let n_in = 1e8;
            let length = 520.0;
            let beta = super::super::channel::sagnac_scale(0.2, length, 795e-9);
            let approx = min_sensitivity_ideal(gain, n_in, 795e-9, 0.2, length, lambda);
            let exact = ideal_sensitivity(gain, n_in, beta, lambda).delta_omega.value();
            prop_assert!(approx <= exact * (1.0 + 1e-12), "approx {} exact {}", approx, exact);
        }
    }
}
