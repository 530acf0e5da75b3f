//! Truncated two-mode Fock-space simulation.
//!
//! The density matrix is held as a mixture of unnormalized pure components,
//! `rho = sum_k |psi_k><psi_k|`, over the basis `|n_a, n_S>` with
//! `0 <= n_a, n_S < dim`. Loss channels branch components through their Kraus
//! operators; the squeeze unitary is applied exactly inside each
//! photon-difference sector. Probability pushed outside the basis, or
//! pruned as negligible, is tracked in `trace_deficit`.

use nalgebra::{DMatrix, Matrix4, SymmetricEigen, Vector4};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::Mode;
use crate::error::{Error, Result};
use crate::model::PhotonMoments;

/// Truncation policy of the Fock backend.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FockOptions {
    /// Hard cap on the number of levels per mode.
    pub cap: usize,
    /// Maximum total probability allowed outside the basis.
    pub tolerance: f64,
    /// Extra levels per sector used when evolving the squeeze unitary.
    pub pad: usize,
}

impl Default for FockOptions {
    /// 96 levels per mode: an amplified 4-photon coherent state at gain 1.5
    /// still carries 5.8e-8 of probability beyond 64 levels but below 1e-12
    /// beyond 96.
    fn default() -> Self {
        Self {
            cap: 96,
            tolerance: 1e-8,
            pad: 48,
        }
    }
}

impl FockOptions {
    /// Share of the tolerance that a single basis trim or pruning pass may spend.
    fn step_budget(&self) -> f64 {
        1e-2 * self.tolerance
    }
}

/// Accumulated number moments of a (possibly split) mixture.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ReadoutSums {
    pub trace: f64,
    pub first: f64,
    pub second: f64,
}

impl ReadoutSums {
    pub fn moments(&self) -> PhotonMoments {
        let mean = self.first / self.trace;
        PhotonMoments::clamped(mean, self.second / self.trace - mean * mean)
    }
}

impl std::ops::AddAssign for ReadoutSums {
    fn add_assign(&mut self, other: Self) {
        self.trace += other.trace;
        self.first += other.first;
        self.second += other.second;
    }
}

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

#[derive(Debug, Clone, PartialEq)]
pub struct FockTwoModeState {
    dim: usize,
    components: Vec<Vec<Complex64>>,
    trace_deficit: f64,
    options: FockOptions,
}

impl FockTwoModeState {
    /// Optical mode in the coherent state `alpha`, spin wave in vacuum.
    ///
    /// The basis is the smallest one whose Poisson tail, weighted by `(1 + n)^2`
    /// so that second moments are resolved as well, stays within budget.
    pub fn coherent_vacuum(alpha: Complex64, options: FockOptions) -> Result<Self> {
        let n_bar = alpha.norm_sqr();
        let horizon = options.cap + 256 + (4.0 * n_bar) as usize;
        let mut amps = Vec::with_capacity(horizon);
        let mut c = Complex64::new((-0.5 * n_bar).exp(), 0.0);
        for n in 0..horizon {
            if n > 0 {
                c *= alpha / (n as f64).sqrt();
            }
            amps.push(c);
        }
        let mut tail = vec![0.0; horizon + 1];
        let mut weighted = vec![0.0; horizon + 1];
        for n in (0..horizon).rev() {
            let p = amps[n].norm_sqr();
            tail[n] = tail[n + 1] + p;
            weighted[n] = weighted[n + 1] + p * ((1 + n) * (1 + n)) as f64;
        }
        let budget = options.step_budget();
        let dim = (1..=options.cap)
            .find(|&d| weighted[d] < budget)
            .ok_or(Error::TruncationInsufficient {
                tail_mass: weighted[options.cap],
                tolerance: budget,
                cap: options.cap,
            })?;
        let mut psi = vec![ZERO; dim * dim];
        for (n, amp) in amps.iter().take(dim).enumerate() {
            psi[n * dim] = *amp;
        }
        Ok(Self {
            dim,
            components: vec![psi],
            trace_deficit: tail[dim],
            options,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn trace_deficit(&self) -> f64 {
        self.trace_deficit
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn options(&self) -> &FockOptions {
        &self.options
    }

    fn idx(&self, n_a: usize, n_s: usize) -> usize {
        n_a * self.dim + n_s
    }

    pub fn trace(&self) -> f64 {
        self.components
            .iter()
            .map(|psi| psi.iter().map(|c| c.norm_sqr()).sum::<f64>())
            .sum()
    }

    fn charge(&mut self, mass: f64) -> Result<()> {
        self.trace_deficit += mass;
        if self.trace_deficit > self.options.tolerance {
            return Err(Error::TruncationInsufficient {
                tail_mass: self.trace_deficit,
                tolerance: self.options.tolerance,
                cap: self.options.cap,
            });
        }
        Ok(())
    }

    fn resize(&mut self, new_dim: usize) {
        if new_dim == self.dim {
            return;
        }
        let keep = self.dim.min(new_dim);
        for psi in &mut self.components {
            let mut out = vec![ZERO; new_dim * new_dim];
            for n_a in 0..keep {
                for n_s in 0..keep {
                    out[n_a * new_dim + n_s] = psi[n_a * self.dim + n_s];
                }
            }
            *psi = out;
        }
        self.dim = new_dim;
    }

    /// Shrinks the basis to the smallest size whose discarded mass fits the step budget.
    fn trim(&mut self) -> Result<()> {
        let d = self.dim;
        // shell[k]: mass of states with max(n_a, n_S) == k.
        let mut shell = vec![0.0; d];
        for psi in &self.components {
            for n_a in 0..d {
                for n_s in 0..d {
                    shell[n_a.max(n_s)] += psi[n_a * d + n_s].norm_sqr();
                }
            }
        }
        let budget = self.options.step_budget();
        let mut dropped = 0.0;
        let mut new_dim = d;
        while new_dim > 1 && dropped + shell[new_dim - 1] < budget {
            dropped += shell[new_dim - 1];
            new_dim -= 1;
        }
        self.resize(new_dim);
        self.charge(dropped)
    }

    /// Two-mode squeeze `U = exp(r (e^{i theta} a^dag S^dag - h.c.))`.
    ///
    /// Each sector of fixed `n_a - n_S` is a tridiagonal problem; with
    /// `P = diag((i e^{i theta})^m)` the generator becomes `-i P J P^dag` for the
    /// real symmetric `J`, so `U = P V exp(-i r Lambda) V^T P^dag`.
    pub fn two_mode_squeeze(&mut self, r: f64, theta: f64) -> Result<()> {
        if !(r >= 0.0 && r.is_finite()) {
            return Err(Error::InvalidOperation(format!(
                "squeeze parameter must be >= 0, got {r}"
            )));
        }
        if r == 0.0 {
            return Ok(());
        }
        let d_in = self.dim;
        let cap = self.options.cap;
        let pad = self.options.pad;
        let step = Complex64::new(-theta.sin(), theta.cos()); // i e^{i theta}
        let mut out = vec![vec![ZERO; cap * cap]; self.components.len()];
        let mut leaked = 0.0;

        for offset in 0..d_in {
            let in_len = d_in - offset;
            let out_len = cap - offset;
            let n = out_len + pad;
            let couplings: Vec<f64> = (0..n - 1)
                .map(|m| (((m + offset + 1) * (m + 1)) as f64).sqrt())
                .collect();
            let mut eigen: Option<SymmetricEigen<f64, nalgebra::Dyn>> = None;
            let mut phases = Vec::with_capacity(n);
            let mut p = Complex64::new(1.0, 0.0);
            for _ in 0..n {
                phases.push(p);
                p *= step;
            }
            let signs: &[i64] = if offset == 0 { &[1] } else { &[1, -1] };
            for &sign in signs {
                let site = |m: usize| -> (usize, usize) {
                    if sign > 0 {
                        (m + offset, m)
                    } else {
                        (m, m + offset)
                    }
                };
                for (psi, target) in self.components.iter().zip(out.iter_mut()) {
                    let input: Vec<Complex64> = (0..in_len)
                        .map(|m| {
                            let (a, s) = site(m);
                            psi[a * d_in + s] * phases[m].conj()
                        })
                        .collect();
                    if input.iter().all(|c| c.norm_sqr() == 0.0) {
                        continue;
                    }
                    let eig = eigen.get_or_insert_with(|| {
                        let mut j = DMatrix::<f64>::zeros(n, n);
                        for (m, &c) in couplings.iter().enumerate() {
                            j[(m + 1, m)] = c;
                            j[(m, m + 1)] = c;
                        }
                        SymmetricEigen::new(j)
                    });
                    let v = &eig.eigenvectors;
                    let coeff: Vec<Complex64> = (0..n)
                        .map(|l| {
                            let proj: Complex64 = input.iter().enumerate().map(|(k, c)| c * v[(k, l)]).sum();
                            proj * Complex64::from_polar(1.0, -r * eig.eigenvalues[l])
                        })
                        .collect();
                    for j_out in 0..n {
                        let w: Complex64 = coeff.iter().enumerate().map(|(l, c)| c * v[(j_out, l)]).sum();
                        let amp = w * phases[j_out];
                        if j_out < out_len {
                            let (a, s) = site(j_out);
                            target[a * cap + s] = amp;
                        } else {
                            leaked += amp.norm_sqr();
                        }
                    }
                }
            }
        }
        if leaked > self.options.tolerance {
            return Err(Error::TruncationInsufficient {
                tail_mass: leaked,
                tolerance: self.options.tolerance,
                cap,
            });
        }
        self.components = out;
        self.dim = cap;
        self.charge(leaked)?;
        self.trim()
    }

    /// Phase shift `b -> e^{i phi} b` on one mode.
    pub fn phase(&mut self, mode: Mode, phi: f64) {
        let d = self.dim;
        let rot: Vec<Complex64> = (0..d)
            .map(|n| Complex64::from_polar(1.0, phi * n as f64))
            .collect();
        for psi in &mut self.components {
            for n_a in 0..d {
                for n_s in 0..d {
                    let n = match mode {
                        Mode::Optical => n_a,
                        Mode::Spin => n_s,
                    };
                    psi[n_a * d + n_s] *= rot[n];
                }
            }
        }
    }

    /// Pure-loss channel with Kraus operators
    /// `K_k |n> = sqrt(C(n, k)) eta^{(n-k)/2} (1-eta)^{k/2} |n-k>`.
    pub fn transmission(&mut self, mode: Mode, eta: f64) -> Result<()> {
        if !(0.0..=1.0).contains(&eta) {
            return Err(Error::InvalidOperation(format!(
                "transmission must lie in [0, 1], got {eta}"
            )));
        }
        if eta == 1.0 {
            return Ok(());
        }
        let d = self.dim;
        // kraus[n][k] for k <= n.
        let (keep, lose) = (eta.sqrt(), (1.0 - eta).sqrt());
        let mut kraus = vec![vec![0.0; d]; d];
        for (n, row) in kraus.iter_mut().enumerate() {
            let mut binom = 1.0f64;
            for (k, entry) in row.iter_mut().enumerate().take(n + 1) {
                if k > 0 {
                    binom *= (n - k + 1) as f64 / k as f64;
                }
                *entry = binom.sqrt() * keep.powi((n - k) as i32) * lose.powi(k as i32);
            }
        }
        let prune = self.options.step_budget() / (self.components.len() * d) as f64;
        let mut branched = Vec::new();
        let mut pruned = 0.0;
        for psi in &self.components {
            // k is the number of photons lost; kraus is indexed by the source level first.
            #[allow(clippy::needless_range_loop)]
            for k in 0..d {
                let mut phi = vec![ZERO; d * d];
                let mut norm = 0.0;
                for n_a in 0..d {
                    for n_s in 0..d {
                        let (n, a_out, s_out) = match mode {
                            Mode::Optical if n_a >= k => (n_a, n_a - k, n_s),
                            Mode::Spin if n_s >= k => (n_s, n_a, n_s - k),
                            _ => continue,
                        };
                        let amp = psi[n_a * d + n_s] * kraus[n][k];
                        norm += amp.norm_sqr();
                        phi[a_out * d + s_out] = amp;
                    }
                }
                if norm == 0.0 {
                    continue;
                }
                if norm < prune {
                    pruned += norm;
                } else {
                    branched.push(phi);
                }
            }
        }
        self.components = branched;
        self.charge(pruned)
    }

    /// Number distribution of one mode (unnormalized; sums to the retained trace).
    pub fn number_distribution(&self, mode: Mode) -> Vec<f64> {
        let d = self.dim;
        let mut p = vec![0.0; d];
        for psi in &self.components {
            for n_a in 0..d {
                for n_s in 0..d {
                    let n = match mode {
                        Mode::Optical => n_a,
                        Mode::Spin => n_s,
                    };
                    p[n] += psi[n_a * d + n_s].norm_sqr();
                }
            }
        }
        p
    }

    /// Photon-number moments of one mode, normalized by the retained trace.
    pub fn photon_statistics(&self, mode: Mode) -> PhotonMoments {
        let p = self.number_distribution(mode);
        let total: f64 = p.iter().sum();
        let mean = p.iter().enumerate().map(|(n, w)| n as f64 * w).sum::<f64>() / total;
        let second = p.iter().enumerate().map(|(n, w)| (n * n) as f64 * w).sum::<f64>() / total;
        PhotonMoments::clamped(mean, second - mean * mean)
    }

    /// Splits the mixture into one state per pure component; the trace deficit
    /// stays with the caller.
    pub fn into_components(self) -> Vec<FockTwoModeState> {
        let (dim, options) = (self.dim, self.options);
        self.components
            .into_iter()
            .map(|psi| FockTwoModeState {
                dim,
                components: vec![psi],
                trace_deficit: 0.0,
                options,
            })
            .collect()
    }

    /// Optical photon statistics after a final squeeze `(r, theta)`, read out in
    /// the Heisenberg picture.
    ///
    /// `U^dag n_a U = G^2 a^dag a + G g e^{i theta} a^dag S^dag + G g e^{-i theta} S a + g^2 S S^dag`
    /// is applied to each component, giving `<n> = sum <psi|X psi>` and
    /// `<n^2> = sum ||X psi||^2` without building the amplified state.
    pub fn squeezed_optical_statistics(&self, r: f64, theta: f64) -> PhotonMoments {
        self.squeezed_optical_sums(r, theta).moments()
    }

    /// Unnormalized `(tr rho, tr rho X, tr rho X^2)` behind [`Self::squeezed_optical_statistics`].
    pub fn squeezed_optical_sums(&self, r: f64, theta: f64) -> ReadoutSums {
        let d = self.dim;
        let (big, small) = (r.cosh(), r.sinh());
        let up = Complex64::from_polar(big * small, theta);
        let down = up.conj();
        let e = d + 1;
        let mut first = 0.0;
        let mut second = 0.0;
        for psi in &self.components {
            let at = |a: usize, s: usize| if a < d && s < d { psi[a * d + s] } else { ZERO };
            for n_a in 0..e {
                for n_s in 0..e {
                    let diag = big * big * n_a as f64 + small * small * (n_s + 1) as f64;
                    let mut x = at(n_a, n_s) * diag;
                    if n_a > 0 && n_s > 0 {
                        x += up * ((n_a * n_s) as f64).sqrt() * at(n_a - 1, n_s - 1);
                    }
                    x += down * (((n_a + 1) * (n_s + 1)) as f64).sqrt() * at(n_a + 1, n_s + 1);
                    first += (at(n_a, n_s).conj() * x).re;
                    second += x.norm_sqr();
                }
            }
        }
        ReadoutSums {
            trace: self.trace(),
            first,
            second,
        }
    }

    fn lower(&self, psi: &[Complex64], mode: Mode) -> Vec<Complex64> {
        let d = self.dim;
        let mut out = vec![ZERO; d * d];
        for n_a in 0..d {
            for n_s in 0..d {
                let (src, n) = match mode {
                    Mode::Optical if n_a + 1 < d => (self.idx(n_a + 1, n_s), n_a + 1),
                    Mode::Spin if n_s + 1 < d => (self.idx(n_a, n_s + 1), n_s + 1),
                    _ => continue,
                };
                out[n_a * d + n_s] = psi[src] * (n as f64).sqrt();
            }
        }
        out
    }

    /// Quadrature means and symmetrized covariance in the `(x_a, p_a, x_S, p_S)`
    /// convention of the Gaussian backend.
    pub fn quadrature_moments(&self) -> (Vector4<f64>, Matrix4<f64>) {
        fn dot(x: &[Complex64], y: &[Complex64]) -> Complex64 {
            x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
        }
        let (mut a, mut s) = (ZERO, ZERO);
        let (mut aa, mut ss, mut a_s, mut ad_s) = (ZERO, ZERO, ZERO, ZERO);
        let (mut na, mut ns) = (0.0, 0.0);
        for psi in &self.components {
            let la = self.lower(psi, Mode::Optical);
            let ls = self.lower(psi, Mode::Spin);
            a += dot(psi, &la);
            s += dot(psi, &ls);
            aa += dot(psi, &self.lower(&la, Mode::Optical));
            ss += dot(psi, &self.lower(&ls, Mode::Spin));
            a_s += dot(psi, &self.lower(&la, Mode::Spin));
            ad_s += dot(&la, &ls);
            na += dot(&la, &la).re;
            ns += dot(&ls, &ls).re;
        }
        let total = self.trace();
        let [a, s, aa, ss, a_s, ad_s] = [a, s, aa, ss, a_s, ad_s].map(|z| z / total);
        let (na, ns) = (na / total, ns / total);

        let sqrt2 = std::f64::consts::SQRT_2;
        let mean = Vector4::new(sqrt2 * a.re, sqrt2 * a.im, sqrt2 * s.re, sqrt2 * s.im);
        let daa = aa - a * a;
        let dss = ss - s * s;
        let dna = na - a.norm_sqr();
        let dns = ns - s.norm_sqr();
        let c = a_s - a * s;
        let e = ad_s - a.conj() * s;
        let mut v = Matrix4::zeros();
        v[(0, 0)] = daa.re + dna + 0.5;
        v[(1, 1)] = -daa.re + dna + 0.5;
        v[(0, 1)] = daa.im;
        v[(2, 2)] = dss.re + dns + 0.5;
        v[(3, 3)] = -dss.re + dns + 0.5;
        v[(2, 3)] = dss.im;
        v[(0, 2)] = c.re + e.re;
        v[(0, 3)] = c.im + e.im;
        v[(1, 2)] = c.im - e.im;
        v[(1, 3)] = -c.re + e.re;
        for i in 0..4 {
            for j in 0..i {
                v[(i, j)] = v[(j, i)];
            }
        }
        (mean, v)
    }

    /// Materializes `rho` in the `|n_a, n_S>` basis; intended for small dimensions.
    pub fn density_matrix(&self) -> DMatrix<Complex64> {
        let size = self.dim * self.dim;
        let mut rho = DMatrix::<Complex64>::zeros(size, size);
        for psi in &self.components {
            for i in 0..size {
                if psi[i].norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..size {
                    rho[(i, j)] += psi[i] * psi[j].conj();
                }
            }
        }
        rho
    }
}

#[cfg(test)]
mod tests {
    use super::super::gaussian::GaussianTwoModeState;
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn coherent(n: f64, arg: f64) -> FockTwoModeState {
        FockTwoModeState::coherent_vacuum(Complex64::from_polar(n.sqrt(), arg), FockOptions::default())
            .unwrap()
    }

    fn assert_matches_gaussian(f: &FockTwoModeState, g: &GaussianTwoModeState, tol: f64) {
        let (mean, cov) = f.quadrature_moments();
        let scale = 1.0 + g.covariance.abs().max() + g.mean.abs().max();
        assert!(
            (mean - g.mean).abs().max() < tol * scale,
            "mean {mean} vs {}",
            g.mean
        );
        assert!(
            (cov - g.covariance).abs().max() < tol * scale,
            "cov {cov} vs {}",
            g.covariance
        );
    }

    #[test]
    fn vacuum_and_coherent() {
        let vac = coherent(0.0, 0.0);
        assert_eq!(vac.dim(), 1);
        assert_eq!(
            vac.photon_statistics(Mode::Optical),
            PhotonMoments {
                mean: 0.0,
                variance: 0.0
            }
        );
        let s = coherent(4.0, 0.3);
        let m = s.photon_statistics(Mode::Optical);
        assert_relative_eq!(m.mean, 4.0, max_relative = 1e-9);
        assert_relative_eq!(m.variance, 4.0, max_relative = 1e-8);
        assert!(s.trace_deficit() < 1e-10);
        assert_matches_gaussian(
            &s,
            &GaussianTwoModeState::coherent_vacuum(Complex64::from_polar(2.0, 0.3)),
            1e-9,
        );
    }

    #[test]
    fn coherent_beyond_cap_is_rejected() {
        let opts = FockOptions {
            cap: 16,
            ..FockOptions::default()
        };
        assert!(FockTwoModeState::coherent_vacuum(Complex64::new(1.0, 0.0), opts).is_ok());
        match FockTwoModeState::coherent_vacuum(Complex64::new(4.0, 0.0), opts) {
            Err(Error::TruncationInsufficient { cap, .. }) => assert_eq!(cap, 16),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn squeeze_matches_gaussian_moments() {
        for &(n, gain, theta) in &[(0.0, 1.2, 0.0), (4.0, 1.5, PI), (2.0, 1.3, 0.7)] {
            let r = f64::acosh(gain);
            let mut f = coherent(n, 0.4);
            f.two_mode_squeeze(r, theta).unwrap();
            let mut g = GaussianTwoModeState::coherent_vacuum(Complex64::from_polar(n.sqrt(), 0.4));
            g.two_mode_squeeze(r, theta).unwrap();
            assert_matches_gaussian(&f, &g, 1e-7);
            let g_sq = gain * gain - 1.0;
            let light = f.photon_statistics(Mode::Optical).mean;
            let spin = f.photon_statistics(Mode::Spin).mean;
            assert_relative_eq!(light, gain * gain * n + g_sq, max_relative = 1e-7);
            assert_relative_eq!(spin, g_sq * (n + 1.0), max_relative = 1e-7);
            assert!(f.trace_deficit() < 1e-8);
        }
    }

    #[test]
    fn squeeze_beyond_cap_is_rejected() {
        let mut f = coherent(4.0, 0.0);
        match f.two_mode_squeeze(f64::acosh(4.0), 0.0) {
            Err(Error::TruncationInsufficient { .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        // 4 photons at gain 1.5 put 5.8e-8 of probability beyond 64 levels.
        let opts = FockOptions {
            cap: 64,
            ..FockOptions::default()
        };
        let mut f = FockTwoModeState::coherent_vacuum(Complex64::new(2.0, 0.0), opts).unwrap();
        match f.two_mode_squeeze(f64::acosh(1.5), 0.0) {
            Err(Error::TruncationInsufficient { tail_mass, .. }) => {
                assert_relative_eq!(tail_mass, 5.77e-8, max_relative = 1e-2)
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn split_components_recombine() {
        let mut f = coherent(2.0, 0.3);
        f.two_mode_squeeze(f64::acosh(1.3), 0.4).unwrap();
        f.transmission(Mode::Optical, 0.6).unwrap();
        let whole = f.squeezed_optical_sums(0.5, 1.0);
        let mut parts = ReadoutSums::default();
        for part in f.clone().into_components() {
            parts += part.squeezed_optical_sums(0.5, 1.0);
        }
        assert_relative_eq!(parts.trace, whole.trace, max_relative = 1e-13);
        assert_relative_eq!(parts.first, whole.first, max_relative = 1e-13);
        assert_relative_eq!(parts.second, whole.second, max_relative = 1e-13);
    }

    #[test]
    fn zero_squeeze_is_identity() {
        let mut f = coherent(3.0, 0.2);
        let before = f.clone();
        f.two_mode_squeeze(0.0, 1.0).unwrap();
        assert_eq!(f, before);
        assert!(f.two_mode_squeeze(-1.0, 0.0).is_err());
    }

    #[test]
    fn loss_examples() {
        let mut f = coherent(4.0, 0.0);
        f.transmission(Mode::Optical, 0.5).unwrap();
        let m = f.photon_statistics(Mode::Optical);
        assert_relative_eq!(m.mean, 2.0, max_relative = 1e-8);
        assert_relative_eq!(m.variance, 2.0, max_relative = 1e-7);
        f.transmission(Mode::Optical, 0.0).unwrap();
        assert!(f.photon_statistics(Mode::Optical).mean < 1e-12);
        assert!(f.transmission(Mode::Spin, -0.1).is_err());
    }

    #[test]
    fn loss_composes() {
        let mut a = coherent(3.0, 0.1);
        a.two_mode_squeeze(f64::acosh(1.4), 0.6).unwrap();
        let mut b = a.clone();
        a.transmission(Mode::Spin, 0.8).unwrap();
        a.transmission(Mode::Spin, 0.6).unwrap();
        b.transmission(Mode::Spin, 0.48).unwrap();
        for mode in [Mode::Optical, Mode::Spin] {
            let (pa, pb) = (a.photon_statistics(mode), b.photon_statistics(mode));
            assert_relative_eq!(pa.mean, pb.mean, max_relative = 1e-10);
            assert_relative_eq!(pa.variance, pb.variance, max_relative = 1e-10);
        }
    }

    #[test]
    fn full_turn_phase_is_identity() {
        let mut f = coherent(2.0, 0.3);
        f.two_mode_squeeze(0.5, 0.2).unwrap();
        let before = f.quadrature_moments();
        f.phase(Mode::Optical, 2.0 * PI);
        let after = f.quadrature_moments();
        assert!((after.0 - before.0).abs().max() < 1e-12);
        assert!((after.1 - before.1).abs().max() < 1e-12);
    }

    #[test]
    fn heisenberg_readout_matches_schrodinger_squeeze() {
        let mut f = coherent(1.0, 0.0);
        f.two_mode_squeeze(f64::acosh(1.2), PI).unwrap();
        f.phase(Mode::Optical, 0.9);
        f.transmission(Mode::Optical, 0.7).unwrap();
        f.transmission(Mode::Spin, 0.8).unwrap();
        let (r, theta) = (f64::acosh(1.15), 0.0);
        let readout = f.squeezed_optical_statistics(r, theta);
        let mut evolved = f.clone();
        evolved.two_mode_squeeze(r, theta).unwrap();
        let direct = evolved.photon_statistics(Mode::Optical);
        assert_relative_eq!(readout.mean, direct.mean, max_relative = 1e-8);
        assert_relative_eq!(readout.variance, direct.variance, max_relative = 1e-7);
    }

    #[test]
    fn density_matrix_is_physical() {
        let opts = FockOptions {
            cap: 14,
            tolerance: 1e-6,
            pad: 32,
        };
        let mut f = FockTwoModeState::coherent_vacuum(Complex64::new(0.7, 0.2), opts).unwrap();
        f.two_mode_squeeze(0.35, 0.5).unwrap();
        f.phase(Mode::Optical, 1.3);
        f.transmission(Mode::Optical, 0.6).unwrap();
        f.transmission(Mode::Spin, 0.75).unwrap();
        let rho = f.density_matrix();
        let hermitian_gap = (&rho - rho.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        assert!(hermitian_gap < 1e-14);
        let eigen = rho.symmetric_eigenvalues();
        assert!(eigen.min() > -1e-10, "min eigenvalue {}", eigen.min());
        assert_relative_eq!(rho.trace().re + f.trace_deficit(), 1.0, epsilon = 1e-12);
        assert!(f.trace_deficit() < opts.tolerance);
    }
}
