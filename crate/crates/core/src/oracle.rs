//! Classical Monte Carlo for a harmonic bath.
//!
//! Each mode contributes δU_n(t) = s_n [ξ_n cos ω_n t + η_n sin ω_n t] to the
//! gap, where ξ_n, η_n are independent standard normals and
//! s_n = √(2 λ_n k_BT). This is the exact classical evolution of an
//! oscillator whose initial position and velocity are drawn from the
//! Boltzmann distribution, projected on the linear gap coordinate, so the
//! equilibrium variance of each contribution is 2 λ_n k_BT.
//!
//! Every sample draws from its own ChaCha8 stream `(seed, sample index)`,
//! so results do not depend on how samples are scheduled.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use crate::bath::{require_modes, BathMode};
use crate::error::{domain, Error, Result};
use crate::solvation::GapTrajectory;
use crate::units::thermal_energy;

#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleSpec {
    pub modes: Vec<BathMode>,
    pub temperature: f64,
    pub n_samples: usize,
    pub dt: f64,
    pub n_steps: usize,
    pub seed: u64,
}

impl EnsembleSpec {
    pub fn validate(&self) -> Result<()> {
        require_modes(&self.modes)?;
        thermal_energy(self.temperature)?;
        if self.n_samples == 0 {
            return domain("need at least one sample");
        }
        if !(self.dt > 0.0) {
            return domain(format!("time step must be positive, got {}", self.dt));
        }
        if self.n_steps < 2 {
            return domain("need at least two time steps");
        }
        Ok(())
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.n_steps).map(|i| i as f64 * self.dt).collect()
    }
}

/// Phase-space point of one mode in gap units: δU = amplitude·position,
/// with position and velocity/ω scaled to unit thermal variance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatorState {
    pub omega: f64,
    pub position: f64,
    /// Velocity divided by ω, so that energy ∝ position² + velocity².
    pub velocity: f64,
}

impl OscillatorState {
    /// Exact harmonic propagation by `t`.
    pub fn evolve(&self, t: f64) -> Self {
        let (s, c) = (self.omega * t).sin_cos();
        OscillatorState {
            omega: self.omega,
            position: self.position * c + self.velocity * s,
            velocity: self.velocity * c - self.position * s,
        }
    }

    /// Energy in units of k_BT/2 per quadratic degree of freedom.
    pub fn energy(&self) -> f64 {
        self.position * self.position + self.velocity * self.velocity
    }
}

fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Boltzmann initial conditions for every mode of sample `index`.
pub fn initial_states(spec: &EnsembleSpec, index: usize) -> Vec<OscillatorState> {
    let mut rng = sample_rng(spec.seed, index);
    spec.modes
        .iter()
        .map(|m| OscillatorState {
            omega: m.omega,
            position: StandardNormal.sample(&mut rng),
            velocity: StandardNormal.sample(&mut rng),
        })
        .collect()
}

fn trajectory_for(spec: &EnsembleSpec, index: usize, kt: f64) -> GapTrajectory {
    let states = initial_states(spec, index);
    let amps: Vec<f64> = spec
        .modes
        .iter()
        .map(|m| (2.0 * m.lambda * kt).sqrt())
        .collect();
    let samples = (0..spec.n_steps)
        .map(|i| {
            let t = i as f64 * spec.dt;
            states
                .iter()
                .zip(&amps)
                .map(|(s, a)| a * s.evolve(t).position)
                .sum()
        })
        .collect();
    GapTrajectory::new(spec.dt, samples).expect("validated spec")
}

/// One fluctuation trajectory δU(t) per sample.
pub fn sample_gap_trajectory(spec: &EnsembleSpec) -> Result<Vec<GapTrajectory>> {
    spec.validate()?;
    let kt = thermal_energy(spec.temperature)?;
    Ok((0..spec.n_samples)
        .into_par_iter()
        .map(|i| trajectory_for(spec, i, kt))
        .collect())
}

/// Σ λ_n cos(ω_n t) / Σ λ_n.
pub fn analytic_classical_c(modes: &[BathMode], times: &[f64]) -> Result<Vec<(f64, f64)>> {
    require_modes(modes)?;
    let total: f64 = modes.iter().map(|m| m.lambda).sum();
    if !(total > 0.0) {
        return Err(Error::Degenerate(
            "bath has no reorganization energy".into(),
        ));
    }
    Ok(times
        .iter()
        .map(|&t| {
            let c: f64 = modes.iter().map(|m| m.lambda * (m.omega * t).cos()).sum();
            (t, c / total)
        })
        .collect())
}

/// Ensemble estimate of C(t) with per-lag standard errors.
#[derive(Debug, Clone, PartialEq)]
pub struct EnsembleCorrelation {
    pub times: Vec<f64>,
    pub c: Vec<f64>,
    pub stderr: Vec<f64>,
}

impl EnsembleCorrelation {
    pub fn points(&self) -> Vec<(f64, f64)> {
        self.times
            .iter()
            .copied()
            .zip(self.c.iter().copied())
            .collect()
    }

    /// Mean standard error over lags > 0.
    pub fn mean_stderr(&self) -> f64 {
        let tail = &self.stderr[1..];
        tail.iter().sum::<f64>() / tail.len().max(1) as f64
    }
}

/// C(t) pooled over trajectories: the numerator and lag-0 denominator are
/// averaged over all samples and time origins, with fluctuations taken
/// about the ensemble mean. Standard errors follow from the linearized
/// ratio r_s = (c_s(k) - C(k) c_s(0)) / c̄(0) across samples.
pub fn ensemble_correlation(
    trajs: &[GapTrajectory],
    max_lag_steps: usize,
) -> Result<EnsembleCorrelation> {
    let first = trajs
        .first()
        .ok_or_else(|| Error::Domain("no trajectories".into()))?;
    let (n, dt) = (first.len(), first.dt());
    if trajs.iter().any(|t| t.len() != n || t.dt() != dt) {
        return domain("trajectories differ in length or time step");
    }
    if 2 * max_lag_steps > n - 1 {
        return domain(format!(
            "max lag of {max_lag_steps} steps needs at least {} samples",
            2 * max_lag_steps + 1
        ));
    }
    let mean = trajs
        .iter()
        .map(|t| t.samples().iter().sum::<f64>())
        .sum::<f64>()
        / (n * trajs.len()) as f64;

    let per_sample: Vec<Vec<f64>> = trajs
        .par_iter()
        .map(|t| {
            let du: Vec<f64> = t.samples().iter().map(|u| u - mean).collect();
            (0..=max_lag_steps)
                .map(|k| {
                    du[..n - k]
                        .iter()
                        .zip(&du[k..])
                        .map(|(a, b)| a * b)
                        .sum::<f64>()
                        / (n - k) as f64
                })
                .collect()
        })
        .collect();

    let m = per_sample.len() as f64;
    let avg: Vec<f64> = (0..=max_lag_steps)
        .map(|k| per_sample.iter().map(|c| c[k]).sum::<f64>() / m)
        .collect();
    if !(avg[0] > 0.0) {
        return Err(Error::Degenerate("ensemble has zero variance".into()));
    }
    let c: Vec<f64> = avg.iter().map(|a| a / avg[0]).collect();
    let stderr = (0..=max_lag_steps)
        .map(|k| {
            if m < 2.0 {
                return f64::NAN;
            }
            let ss: f64 = per_sample
                .iter()
                .map(|s| {
                    let r = (s[k] - c[k] * s[0]) / avg[0];
                    r * r
                })
                .sum();
            (ss / (m - 1.0) / m).sqrt()
        })
        .collect();
    Ok(EnsembleCorrelation {
        times: (0..=max_lag_steps).map(|k| k as f64 * dt).collect(),
        c,
        stderr,
    })
}

/// Mean of δU² at t = 0 over samples (equilibrium mean is zero) and its
/// standard error.
pub fn ensemble_variance(trajs: &[GapTrajectory]) -> Result<(f64, f64)> {
    if trajs.len() < 2 {
        return domain("need at least two trajectories");
    }
    let sq: Vec<f64> = trajs
        .iter()
        .map(|t| t.samples()[0] * t.samples()[0])
        .collect();
    let m = sq.len() as f64;
    let mean = sq.iter().sum::<f64>() / m;
    let var = sq.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (m - 1.0);
    Ok((mean, (var / m).sqrt()))
}
