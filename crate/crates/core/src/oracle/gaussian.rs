//! Exact first- and second-moment propagation of the two-mode Gaussian state.
//!
//! Quadratures are `x = (b + b^dag)/sqrt(2)`, `p = (b - b^dag)/(i sqrt(2))`, so
//! the vacuum covariance is `I/2`. Ordering is `(x_a, p_a, x_S, p_S)`.

use nalgebra::{Matrix2, Matrix4, Vector2, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::Mode;
use crate::error::{Error, Result};
use crate::model::PhotonMoments;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianTwoModeState {
    pub mean: Vector4<f64>,
    pub covariance: Matrix4<f64>,
}

impl GaussianTwoModeState {
    /// Optical mode in the coherent state `alpha`, spin wave in vacuum.
    pub fn coherent_vacuum(alpha: Complex64) -> Self {
        let sqrt2 = std::f64::consts::SQRT_2;
        Self {
            mean: Vector4::new(sqrt2 * alpha.re, sqrt2 * alpha.im, 0.0, 0.0),
            covariance: Matrix4::identity() * 0.5,
        }
    }

    pub fn vacuum() -> Self {
        Self::coherent_vacuum(Complex64::new(0.0, 0.0))
    }

    fn apply_symplectic(&mut self, m: &Matrix4<f64>) {
        self.mean = m * self.mean;
        self.covariance = m * self.covariance * m.transpose();
        self.symmetrize();
    }

    fn symmetrize(&mut self) {
        self.covariance = (self.covariance + self.covariance.transpose()) * 0.5;
    }

    /// Two-mode squeeze `a -> cosh(r) a + e^{i theta} sinh(r) S^dag` (and `a <-> S`).
    pub fn two_mode_squeeze(&mut self, r: f64, theta: f64) -> Result<()> {
        if !(r >= 0.0 && r.is_finite()) {
            return Err(Error::InvalidOperation(format!(
                "squeeze parameter must be >= 0, got {r}"
            )));
        }
        let (big, small) = (r.cosh(), r.sinh());
        let (sin, cos) = theta.sin_cos();
        let reflect = Matrix2::new(cos, sin, sin, -cos) * small;
        let diag = Matrix2::identity() * big;
        let mut m = Matrix4::zeros();
        m.fixed_view_mut::<2, 2>(0, 0).copy_from(&diag);
        m.fixed_view_mut::<2, 2>(2, 2).copy_from(&diag);
        m.fixed_view_mut::<2, 2>(0, 2).copy_from(&reflect);
        m.fixed_view_mut::<2, 2>(2, 0).copy_from(&reflect);
        self.apply_symplectic(&m);
        Ok(())
    }

    /// Phase shift `b -> e^{i phi} b` on one mode.
    pub fn phase(&mut self, mode: Mode, phi: f64) {
        let (sin, cos) = phi.sin_cos();
        let mut m = Matrix4::identity();
        m.fixed_view_mut::<2, 2>(mode.offset(), mode.offset())
            .copy_from(&Matrix2::new(cos, -sin, sin, cos));
        self.apply_symplectic(&m);
    }

    /// Pure-loss channel of power transmission `eta` on one mode.
    pub fn transmission(&mut self, mode: Mode, eta: f64) -> Result<()> {
        if !(0.0..=1.0).contains(&eta) {
            return Err(Error::InvalidOperation(format!(
                "transmission must lie in [0, 1], got {eta}"
            )));
        }
        let o = mode.offset();
        let amp = eta.sqrt();
        for i in o..o + 2 {
            self.mean[i] *= amp;
        }
        for i in 0..4 {
            for j in 0..4 {
                let in_i = (o..o + 2).contains(&i);
                let in_j = (o..o + 2).contains(&j);
                let factor = match (in_i, in_j) {
                    (true, true) => eta,
                    (true, false) | (false, true) => amp,
                    (false, false) => 1.0,
                };
                self.covariance[(i, j)] *= factor;
            }
        }
        for i in o..o + 2 {
            self.covariance[(i, i)] += 0.5 * (1.0 - eta);
        }
        Ok(())
    }

    pub fn mode_block(&self, mode: Mode) -> (Vector2<f64>, Matrix2<f64>) {
        let o = mode.offset();
        (
            self.mean.fixed_rows::<2>(o).into_owned(),
            self.covariance.fixed_view::<2, 2>(o, o).into_owned(),
        )
    }

    /// Photon-number mean and variance of one mode.
    pub fn photon_statistics(&self, mode: Mode) -> PhotonMoments {
        let (d, v) = self.mode_block(mode);
        let mean = 0.5 * (v.trace() + d.norm_squared()) - 0.5;
        let variance = 0.5 * (v * v).trace() + (d.transpose() * v * d)[(0, 0)] - 0.25;
        PhotonMoments::clamped(mean, variance)
    }

    /// Smallest eigenvalue of `V + (i/2) Omega`; non-negative for physical states.
    pub fn uncertainty_margin(&self) -> f64 {
        let omega = Matrix4::new(
            0.0, 1.0, 0.0, 0.0, //
            -1.0, 0.0, 0.0, 0.0, //
            0.0, 0.0, 0.0, 1.0, //
            0.0, 0.0, -1.0, 0.0,
        );
        let h: Matrix4<Complex64> =
            self.covariance.map(|x| Complex64::new(x, 0.0)) + omega.map(|x| Complex64::new(0.0, 0.5 * x));
        h.symmetric_eigenvalues().min()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn coherent(n: f64, arg: f64) -> GaussianTwoModeState {
        GaussianTwoModeState::coherent_vacuum(Complex64::from_polar(n.sqrt(), arg))
    }

    fn assert_states_close(a: &GaussianTwoModeState, b: &GaussianTwoModeState, tol: f64) {
        let scale = 1.0 + a.covariance.abs().max() + a.mean.abs().max();
        assert!((a.mean - b.mean).abs().max() < tol * scale, "{a:?} vs {b:?}");
        assert!(
            (a.covariance - b.covariance).abs().max() < tol * scale,
            "{a:?} vs {b:?}"
        );
    }

    #[test]
    fn vacuum_and_coherent_statistics() {
        let vac = GaussianTwoModeState::vacuum();
        for mode in [Mode::Optical, Mode::Spin] {
            assert_eq!(
                vac.photon_statistics(mode),
                PhotonMoments {
                    mean: 0.0,
                    variance: 0.0
                }
            );
        }
        let s = coherent(4.0, 0.3);
        let m = s.photon_statistics(Mode::Optical);
        assert_relative_eq!(m.mean, 4.0, max_relative = 1e-14);
        assert_relative_eq!(m.variance, 4.0, max_relative = 1e-14);
    }

    #[test]
    fn thermal_block_statistics() {
        let n_bar = 2.5;
        let mut s = GaussianTwoModeState::vacuum();
        s.covariance[(0, 0)] = (2.0 * n_bar + 1.0) / 2.0;
        s.covariance[(1, 1)] = (2.0 * n_bar + 1.0) / 2.0;
        let m = s.photon_statistics(Mode::Optical);
        assert_relative_eq!(m.mean, n_bar, max_relative = 1e-14);
        assert_relative_eq!(m.variance, n_bar * n_bar + n_bar, max_relative = 1e-14);
    }

    #[test]
    fn single_stage_amplification() {
        for gain in [1.0f64, 1.5, 6.0] {
            let r = gain.acosh();
            let g_sq = gain * gain - 1.0;
            let mut vac = GaussianTwoModeState::vacuum();
            vac.two_mode_squeeze(r, PI).unwrap();
            assert_relative_eq!(vac.photon_statistics(Mode::Optical).mean, g_sq, epsilon = 1e-12);
            let n = 1e4;
            let mut s = coherent(n, 0.7);
            s.two_mode_squeeze(r, 1.1).unwrap();
            // The light keeps G^2 N plus the spontaneous g^2; the spin wave gets g^2 (N + 1).
            assert_relative_eq!(
                s.photon_statistics(Mode::Optical).mean,
                gain * gain * n + g_sq,
                max_relative = 1e-12
            );
            assert_relative_eq!(
                s.photon_statistics(Mode::Spin).mean,
                g_sq * (n + 1.0),
                max_relative = 1e-12
            );
        }
        let mut s = coherent(3.0, 0.0);
        let before = s;
        s.two_mode_squeeze(0.0, 0.4).unwrap();
        assert_states_close(&s, &before, 1e-15);
        assert!(s.two_mode_squeeze(-0.1, 0.0).is_err());
    }

    #[test]
    fn loss_channel_examples() {
        let mut s = coherent(4.0, 0.2);
        let before = s;
        s.transmission(Mode::Optical, 1.0).unwrap();
        assert_states_close(&s, &before, 1e-15);
        s.transmission(Mode::Optical, 0.5).unwrap();
        let m = s.photon_statistics(Mode::Optical);
        assert_relative_eq!(m.mean, 2.0, max_relative = 1e-14);
        assert_relative_eq!(m.variance, 2.0, max_relative = 1e-14);
        s.transmission(Mode::Optical, 0.0).unwrap();
        assert_states_close(&s, &GaussianTwoModeState::vacuum(), 1e-15);
        assert!(s.transmission(Mode::Spin, 1.5).is_err());
    }

    #[test]
    fn full_turn_is_identity() {
        let mut s = coherent(5.0, 0.4);
        s.two_mode_squeeze(0.8, 0.3).unwrap();
        let before = s;
        s.phase(Mode::Optical, 2.0 * PI);
        s.phase(Mode::Spin, 0.0);
        assert_states_close(&s, &before, 1e-12);
    }

    proptest! {
        #[test]
        fn loss_composes(
            n in 0.0f64..100.0, r in 0.0f64..2.0, t in 0.0f64..6.3,
            e1 in 0.0f64..=1.0, e2 in 0.0f64..=1.0, spin in any::<bool>(),
        ) {
            let mode = if spin { Mode::Spin } else { Mode::Optical };
            let mut a = coherent(n, 0.5);
            a.two_mode_squeeze(r, t).unwrap();
            let mut b = a;
            a.transmission(mode, e1).unwrap();
            a.transmission(mode, e2).unwrap();
            b.transmission(mode, e1 * e2).unwrap();
            for m in [Mode::Optical, Mode::Spin] {
                let (pa, pb) = (a.photon_statistics(m), b.photon_statistics(m));
                prop_assert!((pa.mean - pb.mean).abs() <= 1e-12 * pb.mean.max(1.0));
                prop_assert!((pa.variance - pb.variance).abs() <= 1e-12 * pb.variance.max(1.0));
            }
        }

        #[test]
        fn channels_stay_physical(
            n in 0.0f64..1e4, r1 in 0.0f64..2.5, r2 in 0.0f64..2.5,
            t1 in 0.0f64..6.3, t2 in 0.0f64..6.3, phi in 0.0f64..6.3,
            eta_a in 0.0f64..=1.0, eta_s in 0.0f64..=1.0,
        ) {
            let mut s = coherent(n, 0.1);
            let tol = 1e-10;
            prop_assert!(s.uncertainty_margin() > -tol);
            s.two_mode_squeeze(r1, t1).unwrap();
            prop_assert!(s.uncertainty_margin() > -tol * s.covariance.abs().max());
            s.phase(Mode::Optical, phi);
            s.transmission(Mode::Optical, eta_a).unwrap();
            prop_assert!(s.uncertainty_margin() > -tol * s.covariance.abs().max());
            s.transmission(Mode::Spin, eta_s).unwrap();
            prop_assert!(s.uncertainty_margin() > -tol * s.covariance.abs().max());
            s.two_mode_squeeze(r2, t2).unwrap();
            prop_assert!(s.uncertainty_margin() > -tol * s.covariance.abs().max());
            prop_assert!((s.covariance - s.covariance.transpose()).abs().max() == 0.0);
        }

        #[test]
        fn statistics_phase_covariant(n in 0.0f64..1e3, r in 0.0f64..2.0, phi in 0.0f64..6.3) {
            let mut s = coherent(n, 0.9);
            s.two_mode_squeeze(r, 0.2).unwrap();
            let before = s.photon_statistics(Mode::Optical);
            s.phase(Mode::Optical, phi);
            let after = s.photon_statistics(Mode::Optical);
            prop_assert!((after.mean - before.mean).abs() <= 1e-12 * before.mean.max(1.0));
            prop_assert!((after.variance - before.variance).abs() <= 1e-11 * before.variance.max(1.0));
        }
    }
}
