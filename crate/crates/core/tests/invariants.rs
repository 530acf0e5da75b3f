//! Structural properties of the model and the design searches.

use alhqg::design::{optimal_lengths, optimal_phase, sweep, PhasePolicy, Scale, SweepSpec, SweepVariable};
use alhqg::model::{derive_channel, rotation_sensitivity, ChannelState};
use alhqg::GyroConfig;
use proptest::prelude::*;

proptest! {
    #[test]
    fn conjugate_gains_are_bosonic(
        gain_1 in 1.0f64..=8.0,
        length in 1.0f64..1e5,
        loss in 0.0f64..10.0,
        xi in 0.0f64..3.0,
    ) {
        let cfg = GyroConfig {
            gain_1,
            loop_length: length,
            fiber_attenuation_db_per_km: loss,
            attenuation_ratio: xi,
            ..GyroConfig::reference()
        };
        let ch = derive_channel(&cfg).unwrap();
        for (big, small) in [(ch.gain_1, ch.g_1), (ch.gain_2, ch.g_2)] {
            prop_assert!(((big - small) * (big + small) - 1.0).abs() < 1e-12);
        }
        prop_assert!(ch.gain_2 <= ch.gain_1);
        prop_assert_eq!(ch.reflectance, 1.0 - ch.transmission);
    }

    #[test]
    fn sensitivity_is_positive_off_the_extrema(omega in 1e-5f64..1.0) {
        let report = rotation_sensitivity(&GyroConfig::reference(), omega).unwrap();
        prop_assert!(report.delta_omega_shot.is_infinite() || report.delta_omega_shot.value() > 0.0);
        prop_assert!(report.sql_shot > 0.0);
    }
}

#[test]
fn lossless_length_sweep_is_monotone() {
    let cfg = GyroConfig::reference().ideal();
    for policy in [PhasePolicy::Operating, PhasePolicy::PerPoint] {
        let spec = SweepSpec::new(SweepVariable::Length, 1.0, 1e5, 256, Scale::Log).with_phase_policy(policy);
        let table = sweep(&cfg, &spec).unwrap();
        let values: Vec<f64> = table
            .records
            .iter()
            .map(|r| r.report.delta_omega_shot.value())
            .collect();
        assert!(values.windows(2).all(|w| w[1] < w[0]), "{policy:?}");
    }
    assert!(optimal_lengths(&cfg).unwrap().is_empty());
}

#[test]
fn reference_length_curve_has_two_minima() {
    let minima = optimal_lengths(&GyroConfig::reference()).unwrap();
    assert_eq!(minima.len(), 2, "{minima:?}");
    assert!(minima[0].loop_length < minima[1].loop_length);
    for m in &minima {
        assert!(
            m.delta_omega_shot
                <= m.bracket
                    .iter()
                    .map(|&l| {
                        let cfg = GyroConfig::reference().with_loop_length(l);
                        rotation_sensitivity(&cfg, m.phase / derive_channel(&cfg).unwrap().beta)
                            .unwrap()
                            .delta_omega_shot
                            .value()
                    })
                    .fold(f64::INFINITY, f64::min)
                    * (1.0 + 1e-12)
        );
    }
}

#[test]
fn optimum_records_are_local_minima() {
    let cfg = GyroConfig::reference();
    let best = optimal_phase(&cfg).unwrap();
    let model = alhqg::GyroModel::new(&cfg).unwrap();
    for factor in [1.0 - 1e-3, 1.0 + 1e-3] {
        assert!(best.delta_omega_shot <= model.delta_omega_at_phase(best.phase * factor).value());
    }
}

#[test]
fn lossless_channel_limit() {
    let ch = ChannelState::lossless(6.0, 2.742).unwrap();
    assert_eq!((ch.transmission, ch.atomic_survival, ch.gain_2), (1.0, 1.0, 6.0));
}
