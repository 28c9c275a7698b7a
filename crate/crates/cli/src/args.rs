//! Clap definitions. Every physical flag requires a unit suffix.

use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use solvdec::units::{Dimension, Quantity, Unit};
use solvdec::WidthModel;

fn quantity(s: &str, dim: Dimension, what: &str) -> Result<f64, String> {
    let q = Quantity::parse(s).map_err(|e| e.to_string())?;
    if q.dimension() != dim {
        return Err(format!("'{s}' is not a {what}"));
    }
    Ok(q.value())
}

pub fn time(s: &str) -> Result<f64, String> {
    quantity(s, Dimension::Time, "time (fs, ps)")
}

pub fn energy(s: &str) -> Result<f64, String> {
    quantity(s, Dimension::Energy, "energy (eV, cm-1, nm)")
}

pub fn temperature(s: &str) -> Result<f64, String> {
    quantity(s, Dimension::Temperature, "temperature (K)")
}

/// Angular frequency in rad/fs; energies and wavenumbers are accepted via ħ.
pub fn frequency(s: &str) -> Result<f64, String> {
    let q = Quantity::parse(s).map_err(|e| e.to_string())?;
    match q.dimension() {
        Dimension::AngularFrequency | Dimension::Energy => {
            q.value_in(Unit::RadPerFs).map_err(|e| e.to_string())
        }
        _ => Err(format!("'{s}' is not a frequency (rad/fs, cm-1, eV)")),
    }
}

/// Ohmic friction strength, `eV*fs` (also `eVfs`).
pub fn friction(s: &str) -> Result<f64, String> {
    let v = ["eV*fs", "eV.fs", "eVfs"]
        .iter()
        .find_map(|u| s.trim().strip_suffix(u))
        .ok_or_else(|| format!("'{s}' needs an eV*fs suffix"))?;
    let v: f64 = v
        .trim()
        .parse()
        .map_err(|_| format!("'{s}' is not a number"))?;
    if !(v.is_finite() && v > 0.0) {
        return Err(format!("'{s}' must be positive"));
    }
    Ok(v)
}

/// `ABSnm:EMnm`, returned in nm.
pub fn wavelength_pair(s: &str) -> Result<(f64, f64), String> {
    let (a, e) = s
        .split_once(':')
        .ok_or_else(|| format!("'{s}' should look like 468nm:583nm"))?;
    let nm = |x: &str| -> Result<f64, String> {
        let x = x.trim();
        let v = x
            .strip_suffix("nm")
            .ok_or_else(|| format!("'{x}' needs an nm suffix"))?;
        v.parse().map_err(|_| format!("'{x}' is not a wavelength"))
    };
    Ok((nm(a)?, nm(e)?))
}

/// `OMEGA:LAMBDA`, e.g. `0.1rad/fs:0.2eV` or `530cm-1:0.2eV`.
pub fn mode(s: &str) -> Result<(f64, f64), String> {
    let (w, l) = s
        .rsplit_once(':')
        .ok_or_else(|| format!("'{s}' should look like 0.1rad/fs:0.2eV"))?;
    Ok((frequency(w)?, energy(l)?))
}

pub fn width_model(s: &str) -> Result<WidthModel, String> {
    s.parse().map_err(|e: solvdec::Error| e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "solvdec",
    version,
    about = "Decoherence and short-time solvation timescales"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Predict τ_D from τ_g and the gap fluctuation (high-temperature form)
    Relate(RelateArgs),
    /// Thermal wavepacket width factors for one mode
    Widths(WidthsArgs),
    /// Golden-rule and Gaussian decoherence curves for a spectral density
    Spinboson(SpinbosonArgs),
    /// Solvent response C(t) and τ_g from a gap trajectory file
    Respond(RespondArgs),
    /// Classical Monte Carlo cross-check of C(t)
    Oracle(OracleArgs),
    /// Published case studies, or a batch file of inputs
    Casestudies(CaseArgs),
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("gap").required(true).args(["rms", "stokes", "stokes_nm"])))]
pub struct RelateArgs {
    /// Gaussian solvation timescale, e.g. 10.6fs
    #[arg(long, value_parser = time)]
    pub tau_g: f64,
    #[arg(long, value_parser = temperature, default_value = "298K")]
    pub temp: f64,
    /// rms gap fluctuation, e.g. 0.21eV
    #[arg(long, value_parser = energy)]
    pub rms: Option<f64>,
    /// Stokes shift (2λ) as an energy, e.g. 1.7eV
    #[arg(long, value_parser = energy)]
    pub stokes: Option<f64>,
    /// Stokes shift from band maxima, e.g. 468nm:583nm
    #[arg(long, value_parser = wavelength_pair)]
    pub stokes_nm: Option<(f64, f64)>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct WidthsArgs {
    /// Mode frequency, e.g. 500cm-1 or 0.1rad/fs
    #[arg(long, value_parser = frequency)]
    pub omega: f64,
    #[arg(long, value_parser = temperature, default_value = "298K")]
    pub temp: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DensityKind {
    Ohmic,
    Debye,
    Table,
}

#[derive(Debug, Args)]
pub struct SpinbosonArgs {
    #[arg(long, value_enum, default_value = "ohmic")]
    pub density: DensityKind,
    /// Total reorganization energy of an Ohmic or Debye density
    #[arg(long, value_parser = energy)]
    pub lambda: Option<f64>,
    /// Ohmic friction η, instead of --lambda (λ = η ω_c / π)
    #[arg(long, value_parser = friction, conflicts_with = "lambda")]
    pub eta: Option<f64>,
    /// Cutoff (Ohmic) or Debye frequency
    #[arg(long, value_parser = frequency)]
    pub omega_c: Option<f64>,
    /// Two-column table: ω (cm-1), J_eff (eV)
    #[arg(long)]
    pub table: Option<PathBuf>,
    /// Integration cutoff; defaults to 50 ω_c or the table end
    #[arg(long, value_parser = frequency)]
    pub omega_max: Option<f64>,
    #[arg(long, value_parser = temperature, default_value = "298K")]
    pub temp: f64,
    #[arg(long, value_parser = time, default_value = "50fs")]
    pub t_max: f64,
    #[arg(long, value_parser = time, default_value = "0.5fs")]
    pub dt: f64,
    /// Modes used for the classical C(t) column
    #[arg(long, default_value_t = 4000)]
    pub modes: usize,
    /// Width model whose τ_D is reported in the summary
    #[arg(long, value_parser = width_model, default_value = "tanh")]
    pub width_model: WidthModel,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RespondArgs {
    /// Two-column gap trajectory: t (fs), U (eV)
    #[arg(long)]
    pub trajectory: PathBuf,
    #[arg(long, value_parser = time)]
    pub max_lag: f64,
    /// Lower bound of C(t) in the Gaussian fit window
    #[arg(long, default_value_t = solvdec::solvation::DEFAULT_FIT_THRESHOLD)]
    pub threshold: f64,
    /// Temperature for reporting λ from the gap variance
    #[arg(long, value_parser = temperature)]
    pub temp: Option<f64>,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// Bath mode as OMEGA:LAMBDA, repeatable
    #[arg(long = "mode", value_parser = mode, required = true)]
    pub modes: Vec<(f64, f64)>,
    #[arg(long, value_parser = temperature, default_value = "298K")]
    pub temp: f64,
    #[arg(long, default_value_t = 10_000)]
    pub samples: usize,
    #[arg(long, value_parser = time, default_value = "0.25fs")]
    pub dt: f64,
    #[arg(long, value_parser = time, default_value = "40fs")]
    pub max_lag: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.9)]
    pub threshold: f64,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Write the first `--dump-count` trajectories into this directory
    #[arg(long)]
    pub dump_dir: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    pub dump_count: usize,
}

#[derive(Debug, Args)]
pub struct CaseArgs {
    /// Batch file: label, tau_g_fs, temperature_K, kind, value
    #[arg(long)]
    pub file: Option<PathBuf>,
}
