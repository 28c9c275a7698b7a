//! Short-time solvent response.
//!
//! C(t) is the normalized equilibrium autocorrelation of the energy-gap
//! fluctuation. Expanded in independent modes and to second order in time,
//! C(t) = exp[-α_C t²] with α_C = k_BT Σ λ_n ω_n² / ⟨δU²⟩, using
//! (U'_n)² = ΔF_n²/m_n = 2 λ_n ω_n².

use crate::bath::{require_modes, BathMode};
use crate::error::{domain, Error, Result};
use crate::units::thermal_energy;

/// Default lower bound on C(t) for the Gaussian fit window.
pub const DEFAULT_FIT_THRESHOLD: f64 = 0.6;

/// Minimum number of points (the origin included) in a fit window.
pub const MIN_FIT_POINTS: usize = 4;

/// Equilibrium statistics of the energy gap at one temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapStatistics {
    /// Equilibrium gap U₀ (eV).
    pub mean_gap: f64,
    /// ⟨δU²⟩ (eV²).
    pub variance: f64,
    /// Reorganization energy λ; the Stokes shift is 2λ (eV).
    pub lambda: f64,
    pub temperature: f64,
}

impl GapStatistics {
    /// Linear-response statistics: ⟨δU²⟩ = 2λ k_BT.
    pub fn linear_response(mean_gap: f64, lambda: f64, temperature: f64) -> Result<Self> {
        if !(lambda >= 0.0) {
            return domain(format!("reorganization energy must be >= 0, got {lambda}"));
        }
        Ok(GapStatistics {
            mean_gap,
            variance: 2.0 * lambda * thermal_energy(temperature)?,
            lambda,
            temperature,
        })
    }

    /// From a measured rms fluctuation; λ is inferred through the same
    /// linear-response relation.
    pub fn from_rms(mean_gap: f64, rms: f64, temperature: f64) -> Result<Self> {
        if !(rms >= 0.0) {
            return domain(format!("rms fluctuation must be >= 0, got {rms}"));
        }
        let variance = rms * rms;
        Ok(GapStatistics {
            mean_gap,
            variance,
            lambda: stokes_from_variance(variance, temperature)? / 2.0,
            temperature,
        })
    }

    pub fn rms(&self) -> f64 {
        self.variance.sqrt()
    }

    pub fn stokes_shift(&self) -> f64 {
        2.0 * self.lambda
    }
}

/// ⟨δU²⟩ = 2λ k_BT with 2λ the Stokes shift.
pub fn variance_from_stokes(stokes_shift: f64, temperature: f64) -> Result<f64> {
    if !(stokes_shift >= 0.0) {
        return domain(format!("Stokes shift must be >= 0, got {stokes_shift}"));
    }
    Ok(stokes_shift * thermal_energy(temperature)?)
}

/// Inverse of [`variance_from_stokes`].
pub fn stokes_from_variance(variance: f64, temperature: f64) -> Result<f64> {
    if !(variance >= 0.0) {
        return domain(format!("variance must be >= 0, got {variance}"));
    }
    Ok(variance / thermal_energy(temperature)?)
}

/// α_C in fs⁻².
pub fn solvation_exponent(modes: &[BathMode], gap_variance: f64, temperature: f64) -> Result<f64> {
    require_modes(modes)?;
    if !(gap_variance > 0.0) {
        return domain(format!("gap variance must be positive, got {gap_variance}"));
    }
    let kt = thermal_energy(temperature)?;
    let curvature: f64 = modes.iter().map(|m| m.lambda * m.omega * m.omega).sum();
    Ok(kt * curvature / gap_variance)
}

/// Uniformly sampled gap U(t_i).
#[derive(Debug, Clone, PartialEq)]
pub struct GapTrajectory {
    dt: f64,
    samples: Vec<f64>,
}

impl GapTrajectory {
    pub fn new(dt: f64, samples: Vec<f64>) -> Result<Self> {
        if !(dt > 0.0) {
            return domain(format!("time step must be positive, got {dt}"));
        }
        if samples.len() < 2 {
            return domain("trajectory needs at least two samples");
        }
        Ok(GapTrajectory { dt, samples })
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.samples.len() as f64
    }

    pub fn variance(&self) -> f64 {
        let m = self.mean();
        self.samples.iter().map(|u| (u - m) * (u - m)).sum::<f64>() / self.samples.len() as f64
    }

    pub fn reversed(&self) -> Self {
        let mut samples = self.samples.clone();
        samples.reverse();
        GapTrajectory {
            dt: self.dt,
            samples,
        }
    }
}

/// Normalized autocorrelation of δU on lags 0, dt, 2dt, ... up to `max_lag`.
///
/// Mean-subtracted, each lag averaged over its N - k pairs, divided by the
/// lag-0 value.
pub fn estimate_c(traj: &GapTrajectory, max_lag: f64) -> Result<Vec<(f64, f64)>> {
    let n = traj.len();
    let span = (n - 1) as f64 * traj.dt / 2.0;
    if !(max_lag >= 0.0) || max_lag > span * (1.0 + 1e-12) {
        return domain(format!(
            "max lag {max_lag} fs exceeds half the trajectory span ({span} fs)"
        ));
    }
    let lags = (max_lag / traj.dt + 1e-9).floor() as usize;
    let mean = traj.mean();
    let du: Vec<f64> = traj.samples.iter().map(|u| u - mean).collect();
    let raw: Vec<f64> = (0..=lags)
        .map(|k| {
            let s: f64 = du[..n - k].iter().zip(&du[k..]).map(|(a, b)| a * b).sum();
            s / (n - k) as f64
        })
        .collect();
    let c0 = raw[0];
    let scale = du
        .iter()
        .fold(0.0f64, |m, x| m.max(x.abs()))
        .max(mean.abs());
    if !(c0 > (scale * 1e-12).powi(2)) {
        return Err(Error::Degenerate("gap trajectory has zero variance".into()));
    }
    Ok(raw
        .iter()
        .enumerate()
        .map(|(k, r)| (k as f64 * traj.dt, r / c0))
        .collect())
}

/// Gaussian timescale from the short-time part of a correlation curve.
///
/// Uses the leading run of points with C ≥ `threshold` and fits
/// ln C = -t²/(2τ²) by least squares through the origin.
pub fn fit_gaussian_timescale(curve: &[(f64, f64)], threshold: f64) -> Result<f64> {
    let Some(&(t0, c0)) = curve.first() else {
        return Err(Error::Fit("empty curve".into()));
    };
    if t0.abs() > 1e-12 || (c0 - 1.0).abs() > 0.05 {
        return Err(Error::Fit(format!(
            "curve must start at (0, 1), starts at ({t0}, {c0})"
        )));
    }
    let window: Vec<(f64, f64)> = curve
        .iter()
        .copied()
        .take_while(|&(_, c)| c >= threshold)
        .collect();
    if window.len() < MIN_FIT_POINTS {
        return Err(Error::Fit(format!(
            "{} points above threshold {threshold}, need {MIN_FIT_POINTS}",
            window.len()
        )));
    }
    if window.iter().any(|&(_, c)| c <= 0.0) {
        return Err(Error::Fit("non-positive correlation in fit window".into()));
    }
    let (num, den) = window.iter().fold((0.0, 0.0), |(n, d), &(t, c)| {
        let x = t * t;
        (n - x * c.ln(), d + x * x)
    });
    let k = num / den;
    if !(k > 0.0) {
        return Err(Error::Fit(
            "correlation does not decay in fit window".into(),
        ));
    }
    Ok(1.0 / (2.0 * k).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bath::BathMode;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn mode(w: f64, l: f64) -> BathMode {
        BathMode::new(w, l).unwrap()
    }

    #[test]
    fn fdt_variance_removes_temperature() {
        let modes = [mode(0.1, 0.2), mode(0.3, 0.05), mode(0.05, 0.4)];
        let lam: f64 = modes.iter().map(|m| m.lambda).sum();
        let curv: f64 = modes.iter().map(|m| m.lambda * m.omega * m.omega).sum();
        for t in [50.0, 298.0, 1000.0] {
            let var = variance_from_stokes(2.0 * lam, t).unwrap();
            let a = solvation_exponent(&modes, var, t).unwrap();
            assert_relative_eq!(a, curv / (2.0 * lam), max_relative = 1e-14);
        }
    }

    #[test]
    fn single_and_two_mode_timescales() {
        let w = 0.2;
        let var = variance_from_stokes(0.2, 300.0).unwrap();
        let a = solvation_exponent(&[mode(w, 0.1)], var, 300.0).unwrap();
        assert_relative_eq!(
            crate::decoherence::timescale(a).unwrap(),
            1.0 / w,
            max_relative = 1e-14
        );

        let var = variance_from_stokes(0.4, 300.0).unwrap();
        let a = solvation_exponent(&[mode(w, 0.1), mode(2.0 * w, 0.1)], var, 300.0).unwrap();
        let tau = crate::decoherence::timescale(a).unwrap();
        assert_relative_eq!(tau, (2.0 / (5.0 * w * w)).sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn solvation_exponent_errors() {
        assert!(solvation_exponent(&[mode(1.0, 1.0)], 0.0, 300.0).is_err());
        assert!(solvation_exponent(&[], 1.0, 300.0).is_err());
        assert!(solvation_exponent(&[mode(1.0, 1.0)], 1.0, 0.0).is_err());
    }

    #[test]
    fn hydrated_electron_stokes_shift() {
        let var = variance_from_stokes(1.7, 298.0).unwrap();
        assert_eq!((var * 1e5).round(), 4366.0);
        assert_eq!((var.sqrt() * 1e4).round(), 2089.0);
        assert_eq!(variance_from_stokes(0.0, 298.0).unwrap(), 0.0);
        assert!(variance_from_stokes(-0.1, 298.0).is_err());
        let back = stokes_from_variance(var, 298.0).unwrap();
        assert_relative_eq!(back, 1.7, max_relative = 1e-12);
    }

    #[test]
    fn gap_statistics_modes() {
        let g = GapStatistics::linear_response(0.56, 0.85, 298.0).unwrap();
        assert_relative_eq!(g.variance, 2.0 * 0.85 * thermal_energy(298.0).unwrap());
        assert_relative_eq!(g.stokes_shift(), 1.7);
        let h = GapStatistics::from_rms(0.56, g.rms(), 298.0).unwrap();
        assert_relative_eq!(h.lambda, 0.85, max_relative = 1e-12);
        assert!(GapStatistics::linear_response(0.0, -1.0, 298.0).is_err());
    }

    #[test]
    fn cosine_trajectory() {
        let (w, dt, n) = (0.3, 0.1, 200_000);
        let traj = GapTrajectory::new(
            dt,
            (0..n).map(|i| 1.5 + (w * i as f64 * dt).cos()).collect(),
        )
        .unwrap();
        let c = estimate_c(&traj, 30.0).unwrap();
        assert_eq!(c[0], (0.0, 1.0));
        for &(t, v) in &c {
            assert!((v - (w * t).cos()).abs() < 1e-3, "t={t}");
        }
    }

    #[test]
    fn white_noise_decorrelates() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 20_000;
        let traj = GapTrajectory::new(1.0, (0..n).map(|_| rng.random::<f64>()).collect()).unwrap();
        let c = estimate_c(&traj, 50.0).unwrap();
        let bound = 3.0 / (n as f64).sqrt();
        assert!(c[1..].iter().all(|&(_, v)| v.abs() < bound));
    }

    #[test]
    fn estimator_errors() {
        let flat = GapTrajectory::new(1.0, vec![0.3; 100]).unwrap();
        assert!(matches!(estimate_c(&flat, 10.0), Err(Error::Degenerate(_))));
        let t = GapTrajectory::new(1.0, (0..11).map(|i| i as f64).collect()).unwrap();
        assert!(estimate_c(&t, 5.0).is_ok());
        assert!(estimate_c(&t, 5.5).is_err());
        assert!(GapTrajectory::new(0.0, vec![1.0, 2.0]).is_err());
        assert!(GapTrajectory::new(1.0, vec![1.0]).is_err());
    }

    #[test]
    fn fit_recovers_exact_gaussian() {
        let tau = 10.6;
        let curve: Vec<_> = (0..200)
            .map(|i| {
                let t = 0.5 * i as f64;
                (t, (-t * t / (2.0 * tau * tau)).exp())
            })
            .collect();
        let fit = fit_gaussian_timescale(&curve, DEFAULT_FIT_THRESHOLD).unwrap();
        assert_relative_eq!(fit, tau, max_relative = 1e-6);
    }

    #[test]
    fn fit_of_cosine() {
        let w = 0.25;
        let curve: Vec<_> = (0..400)
            .map(|i| {
                let t = 0.05 * i as f64;
                (t, (w * t).cos())
            })
            .collect();
        let tau = fit_gaussian_timescale(&curve, 0.9).unwrap();
        assert!((tau * w - 1.0).abs() < 0.02, "{}", tau * w);
        // wider windows pick up the quartic term
        let loose = fit_gaussian_timescale(&curve, 0.6).unwrap();
        assert!((tau * w - 1.0).abs() < (loose * w - 1.0).abs());
        let mid = fit_gaussian_timescale(&curve, 0.8).unwrap();
        assert!(mid * w < tau * w && mid * w > loose * w);
    }

    #[test]
    fn fit_errors() {
        assert!(fit_gaussian_timescale(&[], 0.6).is_err());
        let short = [(0.0, 1.0), (1.0, 0.9), (2.0, 0.7), (3.0, 0.5)];
        assert!(matches!(
            fit_gaussian_timescale(&short, 0.6),
            Err(Error::Fit(_))
        ));
        let offset = [(1.0, 1.0), (2.0, 0.9), (3.0, 0.8), (4.0, 0.7)];
        assert!(fit_gaussian_timescale(&offset, 0.6).is_err());
        let flat = [(0.0, 1.0), (1.0, 1.0), (2.0, 1.0), (3.0, 1.0)];
        assert!(fit_gaussian_timescale(&flat, 0.6).is_err());
        let bad = [(0.0, 1.0), (1.0, 0.5), (2.0, 0.0), (3.0, -0.2)];
        assert!(fit_gaussian_timescale(&bad, -1.0).is_err());
    }

    proptest! {
        #[test]
        fn time_reversal_symmetry(xs in proptest::collection::vec(-1.0f64..1.0, 20..200)) {
            let traj = GapTrajectory::new(0.5, xs).unwrap();
            let span = (traj.len() - 1) as f64 * 0.5 / 2.0;
            if let Ok(a) = estimate_c(&traj, span) {
                let b = estimate_c(&traj.reversed(), span).unwrap();
                for (p, q) in a.iter().zip(&b) {
                    prop_assert!((p.1 - q.1).abs() < 1e-12);
                }
            }
        }

        #[test]
        fn fit_scales_with_grid(tau in 1.0f64..50.0, s in 0.1f64..10.0) {
            let curve: Vec<_> = (0..300).map(|i| {
                let t = 0.1 * tau * i as f64 / 3.0;
                (t, (-t * t / (2.0 * tau * tau)).exp() * (1.0 - 1e-3 * (t / tau).powi(4)))
            }).collect();
            let scaled: Vec<_> = curve.iter().map(|&(t, c)| (s * t, c)).collect();
            let a = fit_gaussian_timescale(&curve, 0.6).unwrap();
            let b = fit_gaussian_timescale(&scaled, 0.6).unwrap();
            prop_assert!((b / (s * a) - 1.0).abs() < 1e-10);
        }

        #[test]
        fn additivity_at_fixed_variance(ws in proptest::collection::vec((0.01f64..2.0, 0.0f64..0.5), 2..8)) {
            let modes: Vec<_> = ws.iter().map(|&(w, l)| mode(w, l)).collect();
            let (a, b) = modes.split_at(modes.len() / 2);
            let var = 0.01;
            let all = solvation_exponent(&modes, var, 300.0).unwrap();
            let parts = solvation_exponent(a, var, 300.0).unwrap() + solvation_exponent(b, var, 300.0).unwrap();
            prop_assert!((all - parts).abs() <= 1e-12 * all.max(1e-300));
        }
    }
}
