//! Decoherence and short-time solvation timescales for a two-level solute
//! linearly coupled to a harmonic solvent bath.
//!
//! Internal units are eV, fs, K and rad/fs throughout (see [`units`]).
//!
//! * [`bath`]: modes, spectral densities and thermal wavepacket widths
//! * [`decoherence`]: Gaussian and golden-rule decoherence functions
//! * [`solvation`]: short-time solvent response and C(t) estimation
//! * [`relation`]: the τ_D/τ_g ratio and reference case studies
//! * [`oracle`]: classical Monte Carlo for cross-checks
//! * [`io`]: text formats for trajectories, densities and case batches

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bath;
pub mod decoherence;
pub mod error;
pub mod io;
pub mod oracle;
pub mod quadrature;
pub mod relation;
pub mod solvation;
pub mod units;

pub use bath::{
    discretize, total_reorganization, width_factor, BathMode, Discretization, SpectralDensity,
    WidthModel,
};
pub use decoherence::{
    decoherence_time, gaussian_decoherence_exponent, gaussian_exponent, golden_rule_curve,
    golden_rule_exponent, Bath, DecoherenceCurve, GaussianCurve,
};
pub use error::{Error, Result};
pub use oracle::{analytic_classical_c, sample_gap_trajectory, EnsembleSpec};
pub use relation::{
    evaluate_case_study, ratio_squared_general, ratio_squared_high_t, CaseStudyInput, GapSpec,
    RelationResult,
};
pub use solvation::{
    estimate_c, fit_gaussian_timescale, solvation_exponent, variance_from_stokes, GapStatistics,
    GapTrajectory,
};
pub use units::{thermal_energy, Quantity, Unit};

/// Crate version, recorded in output headers.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
