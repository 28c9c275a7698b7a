//! Decoherence functions of a two-level system coupled to a harmonic bath.
//!
//! Two routes are provided:
//!
//! * the Gaussian wavepacket form D(t) = exp[-α_D t²] with
//!   α_D = Σ_n ΔF_n²/(4 a_n ħ²) = Σ_n λ_n ω_n / (2ħ W_n);
//! * the golden-rule form D_SB(t) = exp[-E(t)] with
//!   E(t) = Σ_n λ_n (1 - cos ω_n t) coth(ħω_n/2k_BT) / (ħω_n),
//!   or its continuum version over a spectral density.
//!
//! With the harmonic (tanh) width the two agree to order t².

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::bath::{coth, require_modes, width_factor, BathMode, SpectralDensity, WidthModel};
use crate::error::{domain, Result};
use crate::quadrature::{integrate, QuadratureOptions};
use crate::units::{thermal_energy, HBAR};

/// A Gaussian decay exp[-α t²], with timescale τ defined through
/// exp[-t²/(2τ²)].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianCurve {
    pub alpha: f64,
    pub tau: f64,
}

impl GaussianCurve {
    pub fn from_alpha(alpha: f64) -> Result<Self> {
        Ok(GaussianCurve {
            alpha,
            tau: timescale(alpha)?,
        })
    }

    pub fn from_tau(tau: f64) -> Result<Self> {
        if !(tau > 0.0) {
            return domain(format!("timescale must be positive, got {tau}"));
        }
        Ok(GaussianCurve {
            alpha: 1.0 / (2.0 * tau * tau),
            tau,
        })
    }

    pub fn value(&self, t: f64) -> f64 {
        (-self.alpha * t * t).exp()
    }
}

/// τ = 1/√(2α).
pub fn timescale(alpha: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return domain(format!("Gaussian exponent must be positive, got {alpha}"));
    }
    Ok(1.0 / (2.0 * alpha).sqrt())
}

/// τ_D from the decoherence exponent.
pub fn decoherence_time(alpha_d: f64) -> Result<f64> {
    timescale(alpha_d)
}

/// A bath either as explicit modes or as a continuous density truncated at
/// `omega_max`.
#[derive(Debug, Clone, Copy)]
pub enum Bath<'a> {
    Modes(&'a [BathMode]),
    Density {
        sd: &'a SpectralDensity,
        omega_max: f64,
    },
}

impl<'a> Bath<'a> {
    pub fn density(sd: &'a SpectralDensity) -> Self {
        Bath::Density {
            sd,
            omega_max: sd.default_omega_max(),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Bath::Modes(m) => require_modes(m),
            Bath::Density { omega_max, .. } if !(*omega_max > 0.0) => {
                domain(format!("omega_max must be positive, got {omega_max}"))
            }
            Bath::Density { .. } => Ok(()),
        }
    }
}

/// α_D in fs⁻² for a list of modes.
pub fn gaussian_decoherence_exponent(
    modes: &[BathMode],
    temperature: f64,
    model: WidthModel,
) -> Result<f64> {
    gaussian_exponent(Bath::Modes(modes), temperature, model)
}

/// α_D for either bath representation. For a density the sum becomes
/// (1/2πħ) ∫ J_eff(ω) / W(ω) dω.
pub fn gaussian_exponent(bath: Bath<'_>, temperature: f64, model: WidthModel) -> Result<f64> {
    bath.validate()?;
    match bath {
        Bath::Modes(modes) => {
            let mut acc = 0.0;
            for m in modes {
                acc += m.lambda * m.omega / width_factor(m.omega, temperature, model)?;
            }
            Ok(acc / (2.0 * HBAR))
        }
        Bath::Density { sd, omega_max } => {
            width_factor(omega_max, temperature, model)?;
            let f = |w: f64| {
                let j = sd.j_eff(w);
                if j == 0.0 {
                    0.0
                } else {
                    j / width_factor(w, temperature, model).unwrap_or(f64::NAN)
                }
            };
            let opts = QuadratureOptions {
                initial_pieces: 16,
                ..Default::default()
            };
            Ok(integrate(f, 0.0, omega_max, opts)?.value / (2.0 * PI * HBAR))
        }
    }
}

/// Golden-rule exponent E(t) ≥ 0 with D_SB(t) = exp[-E(t)].
pub fn golden_rule_exponent(bath: Bath<'_>, temperature: f64, t: f64) -> Result<f64> {
    bath.validate()?;
    let kt = thermal_energy(temperature)?;
    if !(t >= 0.0) {
        return domain(format!("time must be non-negative, got {t}"));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    match bath {
        Bath::Modes(modes) => Ok(modes
            .iter()
            .map(|m| {
                let s = (0.5 * m.omega * t).sin();
                m.lambda * 2.0 * s * s * coth(HBAR * m.omega / (2.0 * kt)) / (HBAR * m.omega)
            })
            .sum()),
        Bath::Density { sd, omega_max } => {
            // (1 - cos ωt)/ω² = 2 sin²(ωt/2)/ω² stays accurate as ω → 0
            let f = |w: f64| {
                let j = sd.j_eff(w);
                if j == 0.0 {
                    return 0.0;
                }
                let s = (0.5 * w * t).sin();
                j * 2.0 * s * s / (w * w) * coth(HBAR * w / (2.0 * kt))
            };
            let periods = (omega_max * t / (2.0 * PI)).ceil() as usize;
            let opts = QuadratureOptions {
                initial_pieces: (2 * periods).clamp(8, 4096),
                ..Default::default()
            };
            Ok(integrate(f, 0.0, omega_max, opts)?.value / (PI * HBAR))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    Gaussian,
    GoldenRule,
}

/// A sampled decoherence function.
#[derive(Debug, Clone, PartialEq)]
pub struct DecoherenceCurve {
    pub times: Vec<f64>,
    /// Exponents E(t_i); the curve is exp[-E].
    pub exponents: Vec<f64>,
    pub kind: CurveKind,
}

impl DecoherenceCurve {
    pub fn values(&self) -> Vec<f64> {
        self.exponents.iter().map(|e| (-e).exp()).collect()
    }

    pub fn points(&self) -> Vec<(f64, f64)> {
        self.times.iter().copied().zip(self.values()).collect()
    }
}

/// D_SB(t) on a time grid; grid points are evaluated in parallel.
pub fn golden_rule_curve(
    bath: Bath<'_>,
    temperature: f64,
    times: &[f64],
) -> Result<DecoherenceCurve> {
    let exponents = times
        .par_iter()
        .map(|&t| golden_rule_exponent(bath, temperature, t))
        .collect::<Result<Vec<_>>>()?;
    Ok(DecoherenceCurve {
        times: times.to_vec(),
        exponents,
        kind: CurveKind::GoldenRule,
    })
}

/// exp[-α_D t²] on a time grid.
pub fn gaussian_curve(
    bath: Bath<'_>,
    temperature: f64,
    model: WidthModel,
    times: &[f64],
) -> Result<DecoherenceCurve> {
    let alpha = gaussian_exponent(bath, temperature, model)?;
    Ok(DecoherenceCurve {
        times: times.to_vec(),
        exponents: times.iter().map(|t| alpha * t * t).collect(),
        kind: CurveKind::Gaussian,
    })
}
