//! Harmonic bath description.
//!
//! A mode is the pair (ω_n, λ_n): its angular frequency and the part of
//! the reorganization energy it carries. In terms of the microscopic
//! spin-boson parameters λ_n = q₀²c_n²/(2 m_n ω_n²), so the squared force
//! difference is ΔF_n² = 2 λ_n m_n ω_n². Every quantity computed by this
//! crate uses ΔF_n² only in combinations where m_n cancels:
//!
//! * ΔF_n² / m_n = 2 λ_n ω_n²
//! * ΔF_n² / (a_n ħ²) = 2 λ_n ω_n / (ħ W_n), with a_n = (m_n ω_n / ħ) W_n
//!
//! where W_n is the dimensionless thermal width factor of [`width_factor`].

use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::units::{thermal_energy, HBAR};

/// Below this argument `coth(x) - 1/x` is evaluated from its Taylor series.
pub const SERIES_SWITCH: f64 = 1.0e-2;

/// Fraction of the reorganization energy allowed beyond `omega_max` before
/// a discretization is flagged.
pub const TAIL_WARNING_FRACTION: f64 = 0.01;

/// One harmonic bath degree of freedom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BathMode {
    /// Angular frequency (rad/fs).
    pub omega: f64,
    /// Reorganization energy carried by the mode (eV).
    pub lambda: f64,
}

impl BathMode {
    pub fn new(omega: f64, lambda: f64) -> Result<Self> {
        if !(omega > 0.0) || !omega.is_finite() {
            return domain(format!(
                "mode frequency must be positive, got {omega} rad/fs"
            ));
        }
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return domain(format!(
                "mode reorganization energy must be >= 0, got {lambda} eV"
            ));
        }
        Ok(BathMode { omega, lambda })
    }
}

/// Prescription for the thermal width of the Gaussian bath wavepacket.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WidthModel {
    /// Exact harmonic result, W = tanh(ħω/2k_BT).
    TanhHarmonic,
    /// Double-well matched width, W = [coth(x) - 1/x]^-1.
    NitzanA,
    /// Frequency-independent high-temperature width, W = 3/x.
    HighTemperature,
}

impl WidthModel {
    pub const ALL: [WidthModel; 3] = [
        WidthModel::TanhHarmonic,
        WidthModel::NitzanA,
        WidthModel::HighTemperature,
    ];

    pub fn name(self) -> &'static str {
        match self {
            WidthModel::TanhHarmonic => "tanh",
            WidthModel::NitzanA => "nitzan",
            WidthModel::HighTemperature => "highT",
        }
    }
}

impl std::str::FromStr for WidthModel {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tanh" | "harmonic" => Ok(WidthModel::TanhHarmonic),
            "nitzan" => Ok(WidthModel::NitzanA),
            "highT" | "hight" | "high-temperature" => Ok(WidthModel::HighTemperature),
            _ => domain(format!("unknown width model '{s}' (tanh, nitzan, highT)")),
        }
    }
}

/// Hyperbolic cotangent with a series branch near zero.
pub fn coth(x: f64) -> f64 {
    if x.abs() < 1.0e-4 {
        1.0 / x + x / 3.0 - x * x * x / 45.0
    } else {
        1.0 / x.tanh()
    }
}

/// `coth(x) - 1/x` (the Langevin function), stable for small x.
pub fn langevin(x: f64) -> f64 {
    if x.abs() < SERIES_SWITCH {
        let x2 = x * x;
        x * (1.0 / 3.0 - x2 * (1.0 / 45.0 - x2 * (2.0 / 945.0 - x2 / 4725.0)))
    } else {
        langevin_direct(x)
    }
}

pub(crate) fn langevin_direct(x: f64) -> f64 {
    1.0 / x.tanh() - 1.0 / x
}

/// `ħω / 2k_BT`.
pub fn reduced_frequency(omega: f64, temperature: f64) -> Result<f64> {
    Ok(HBAR * omega / (2.0 * thermal_energy(temperature)?))
}

/// Dimensionless factor W with a_n = (m_n ω_n / ħ)·W.
pub fn width_factor(omega: f64, temperature: f64, model: WidthModel) -> Result<f64> {
    if !(omega > 0.0) {
        return domain(format!(
            "width needs a positive frequency, got {omega} rad/fs"
        ));
    }
    if model == WidthModel::NitzanA && temperature == 0.0 {
        return Ok(1.0);
    }
    let x = reduced_frequency(omega, temperature)?;
    Ok(match model {
        WidthModel::TanhHarmonic => x.tanh(),
        WidthModel::NitzanA => 1.0 / langevin(x),
        WidthModel::HighTemperature => 3.0 / x,
    })
}

/// Σ λ_n.
pub fn total_reorganization(modes: &[BathMode]) -> Result<f64> {
    if modes.is_empty() {
        return domain("empty mode list");
    }
    Ok(modes.iter().map(|m| m.lambda).sum())
}

pub(crate) fn require_modes(modes: &[BathMode]) -> Result<()> {
    if modes.is_empty() {
        domain("empty mode list")
    } else {
        Ok(())
    }
}

/// Continuous, coupling-weighted spectral density J_eff(ω) = q₀² J(ω),
/// normalized so that λ = (1/π) ∫ J_eff(ω)/ω dω.
#[derive(Debug, Clone, PartialEq)]
pub enum SpectralDensity {
    /// J_eff = η ω exp(-ω/ω_c); η in eV·fs.
    Ohmic { eta: f64, omega_c: f64 },
    /// J_eff = 2 λ ω ω_D / (ω² + ω_D²).
    Debye { lambda: f64, omega_d: f64 },
    /// Linear interpolation between (ω, J_eff) points, zero outside.
    Tabulated(Vec<(f64, f64)>),
}

impl SpectralDensity {
    pub fn ohmic(eta: f64, omega_c: f64) -> Result<Self> {
        if !(eta >= 0.0) || !(omega_c > 0.0) {
            return domain("Ohmic density needs eta >= 0 and omega_c > 0");
        }
        Ok(SpectralDensity::Ohmic { eta, omega_c })
    }

    /// Ohmic density carrying total reorganization energy `lambda`.
    pub fn ohmic_with_lambda(lambda: f64, omega_c: f64) -> Result<Self> {
        Self::ohmic(PI * lambda / omega_c, omega_c)
    }

    pub fn debye(lambda: f64, omega_d: f64) -> Result<Self> {
        if !(lambda >= 0.0) || !(omega_d > 0.0) {
            return domain("Debye density needs lambda >= 0 and omega_D > 0");
        }
        Ok(SpectralDensity::Debye { lambda, omega_d })
    }

    /// Points must be sorted by strictly increasing ω >= 0 with J_eff >= 0.
    /// A leading point at ω = 0 must carry zero.
    pub fn tabulated(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return domain("tabulated density needs at least two points");
        }
        for w in points.windows(2) {
            if !(w[1].0 > w[0].0) {
                return domain("tabulated frequencies must be strictly increasing");
            }
        }
        if points.iter().any(|&(w, j)| !(w >= 0.0) || !(j >= 0.0)) {
            return domain("tabulated density needs omega >= 0 and J >= 0");
        }
        if points[0].0 == 0.0 && points[0].1 != 0.0 {
            return domain("tabulated density must vanish at omega = 0");
        }
        Ok(SpectralDensity::Tabulated(points))
    }

    pub fn j_eff(&self, omega: f64) -> f64 {
        if omega <= 0.0 {
            return 0.0;
        }
        match self {
            SpectralDensity::Ohmic { eta, omega_c } => eta * omega * (-omega / omega_c).exp(),
            SpectralDensity::Debye { lambda, omega_d } => {
                2.0 * lambda * omega * omega_d / (omega * omega + omega_d * omega_d)
            }
            SpectralDensity::Tabulated(pts) => interpolate(pts, omega),
        }
    }

    /// Frequency scale of the density (ω_c, ω_D, or the last table point).
    pub fn characteristic_frequency(&self) -> f64 {
        match self {
            SpectralDensity::Ohmic { omega_c, .. } => *omega_c,
            SpectralDensity::Debye { omega_d, .. } => *omega_d,
            SpectralDensity::Tabulated(pts) => pts[pts.len() - 1].0,
        }
    }

    /// Default integration cutoff: 50 ω_c for analytic forms, the table end
    /// for tabulated data.
    pub fn default_omega_max(&self) -> f64 {
        match self {
            SpectralDensity::Tabulated(pts) => pts[pts.len() - 1].0,
            _ => 50.0 * self.characteristic_frequency(),
        }
    }

    /// Reorganization energy (1/π)∫₀^∞ J_eff/ω dω.
    pub fn total_reorganization(&self) -> f64 {
        match self {
            SpectralDensity::Ohmic { eta, omega_c } => eta * omega_c / PI,
            SpectralDensity::Debye { lambda, .. } => *lambda,
            SpectralDensity::Tabulated(pts) => tabulated_reorganization(pts, f64::INFINITY),
        }
    }

    /// Reorganization energy carried above `omega_max`.
    pub fn tail_reorganization(&self, omega_max: f64) -> f64 {
        match self {
            SpectralDensity::Ohmic { eta, omega_c } => {
                eta * omega_c / PI * (-omega_max / omega_c).exp()
            }
            SpectralDensity::Debye { lambda, omega_d } => {
                lambda * (1.0 - 2.0 / PI * (omega_max / omega_d).atan())
            }
            SpectralDensity::Tabulated(pts) => {
                tabulated_reorganization(pts, f64::INFINITY)
                    - tabulated_reorganization(pts, omega_max)
            }
        }
    }
}

fn interpolate(pts: &[(f64, f64)], omega: f64) -> f64 {
    let (first, last) = (pts[0], pts[pts.len() - 1]);
    if omega < first.0 || omega > last.0 {
        return 0.0;
    }
    let i = pts.partition_point(|p| p.0 <= omega);
    if i == 0 {
        return first.1;
    }
    if i == pts.len() {
        return last.1;
    }
    let (a, b) = (pts[i - 1], pts[i]);
    a.1 + (b.1 - a.1) * (omega - a.0) / (b.0 - a.0)
}

// (1/π)∫ J/ω over the table up to `upper`, exact for the piecewise-linear
// interpolant: on a segment J = p + s ω, ∫ J/ω = p ln(ω₂/ω₁) + s (ω₂ - ω₁).
fn tabulated_reorganization(pts: &[(f64, f64)], upper: f64) -> f64 {
    let mut acc = 0.0;
    for w in pts.windows(2) {
        let (a, b) = (w[0], w[1]);
        if a.0 >= upper {
            break;
        }
        let hi = b.0.min(upper);
        let slope = (b.1 - a.1) / (b.0 - a.0);
        let intercept = a.1 - slope * a.0;
        let log_part = if a.0 == 0.0 {
            // J(0) = 0 forces a zero intercept on the first segment
            0.0
        } else {
            intercept * (hi / a.0).ln()
        };
        acc += log_part + slope * (hi - a.0);
    }
    acc / PI
}

/// Result of [`discretize`].
#[derive(Debug, Clone, PartialEq)]
pub struct Discretization {
    pub modes: Vec<BathMode>,
    /// Fraction of the total reorganization energy beyond `omega_max`.
    pub tail_fraction: f64,
    /// Set when `tail_fraction` exceeds [`TAIL_WARNING_FRACTION`].
    pub tail_warning: bool,
}

/// Midpoint discretization on ω_k = (k - ½)Δω, Δω = ω_max / n, with
/// λ_k = J_eff(ω_k)/(π ω_k)·Δω. Modes with zero weight are kept so the grid
/// stays uniform.
pub fn discretize(sd: &SpectralDensity, n_modes: usize, omega_max: f64) -> Result<Discretization> {
    if n_modes == 0 {
        return domain("need at least one mode");
    }
    if !(omega_max > 0.0) {
        return domain(format!("omega_max must be positive, got {omega_max}"));
    }
    let dw = omega_max / n_modes as f64;
    let modes = (1..=n_modes)
        .map(|k| {
            let w = (k as f64 - 0.5) * dw;
            BathMode {
                omega: w,
                lambda: sd.j_eff(w) / (PI * w) * dw,
            }
        })
        .collect();
    let total = sd.total_reorganization();
    let tail_fraction = if total > 0.0 {
        sd.tail_reorganization(omega_max) / total
    } else {
        0.0
    };
    Ok(Discretization {
        modes,
        tail_fraction,
        tail_warning: tail_fraction > TAIL_WARNING_FRACTION,
    })
}
