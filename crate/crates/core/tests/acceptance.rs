//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use solvdec::bath::{discretize, width_factor, BathMode, SpectralDensity, WidthModel};
use solvdec::decoherence::{
    gaussian_decoherence_exponent, gaussian_exponent, golden_rule_exponent, Bath,
};
use solvdec::oracle::{
    analytic_classical_c, ensemble_correlation, ensemble_variance, sample_gap_trajectory,
    EnsembleSpec,
};
use solvdec::relation::{
    evaluate_case_study, ratio_squared_general, reference_cases, stokes_energy_from_wavelengths,
    CaseStudyInput, GapSpec,
};
use solvdec::solvation::{fit_gaussian_timescale, variance_from_stokes};
use solvdec::units::{thermal_energy, HBAR, K_B};

const ROOM: f64 = 298.0;

type Outcome = Result<String, String>;

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn hydrated_electron() -> Outcome {
    let input = CaseStudyInput::new("hydrated electron", 10.6, ROOM, GapSpec::Rms(0.21))
        .map_err(|e| e.to_string())?;
    let r = evaluate_case_study(&input).map_err(|e| e.to_string())?;
    check(
        (r.tau_d - 4.5).abs() <= 0.1,
        format!("tau_D = {:.4} fs (target 4.5 +/- 0.1 fs)", r.tau_d),
    )
}

fn fdt_consistency() -> Outcome {
    let var = variance_from_stokes(1.7, ROOM).map_err(|e| e.to_string())?;
    let rms = var.sqrt();
    let ok = (rms * 1e3).round() == 209.0 && (rms * 1e2).round() == 21.0;
    check(
        ok,
        format!("rms = {rms:.5} eV from a 1.7 eV Stokes shift (0.209 -> 0.21 eV)"),
    )
}

fn betaine() -> Outcome {
    let input = CaseStudyInput::new("betaine-30", 91.0, ROOM, GapSpec::Rms(0.16))
        .map_err(|e| e.to_string())?;
    let r = evaluate_case_study(&input).map_err(|e| e.to_string())?;
    let dev = (r.tau_d - 49.0).abs() / 49.0;
    check(
        dev <= 0.05,
        format!(
            "tau_D = {:.2} fs vs 49 fs, deviation {:.2}% (limit 5%)",
            r.tau_d,
            100.0 * dev
        ),
    )
}

fn high_temperature_collapse() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let n = rng.random_range(1..=100);
        let modes: Vec<BathMode> = (0..n)
            .map(|_| {
                BathMode::new(rng.random_range(0.01..=10.0), rng.random_range(0.0..=1.0)).unwrap()
            })
            .collect();
        let t = rng.random_range(50.0..1000.0);
        let var = rng.random_range(1e-3..1.0);
        let general = ratio_squared_general(&modes, var, t, WidthModel::HighTemperature)
            .map_err(|e| e.to_string())?;
        let kt = thermal_energy(t).unwrap();
        let closed = 12.0 * kt * kt / var;
        worst = worst.max((general / closed - 1.0).abs());
    }
    check(
        worst <= 1e-12,
        format!("max relative deviation {worst:.2e} over 20 mode sets (limit 1e-12)"),
    )
}

fn spin_boson_short_time() -> Outcome {
    let (lambda, omega_c) = (0.02, 0.2);
    let sd = SpectralDensity::ohmic_with_lambda(lambda, omega_c).map_err(|e| e.to_string())?;
    let wmax = sd.default_omega_max();
    let modes = discretize(&sd, 4000, wmax)
        .map_err(|e| e.to_string())?
        .modes;
    let discrete = Bath::Modes(&modes);
    let continuous = Bath::density(&sd);
    let a_disc = gaussian_decoherence_exponent(&modes, ROOM, WidthModel::TanhHarmonic)
        .map_err(|e| e.to_string())?;
    let a_cont =
        gaussian_exponent(continuous, ROOM, WidthModel::TanhHarmonic).map_err(|e| e.to_string())?;

    let mut short: f64 = 0.0;
    for s in [1e-2, 3e-3, 1e-3, 1e-4] {
        let t = s / wmax;
        let e_disc = golden_rule_exponent(discrete, ROOM, t).map_err(|e| e.to_string())?;
        let e_cont = golden_rule_exponent(continuous, ROOM, t).map_err(|e| e.to_string())?;
        short = short
            .max((e_disc / (t * t) / a_disc - 1.0).abs())
            .max((e_cont / (t * t) / a_cont - 1.0).abs());
    }
    let mut agree: f64 = 0.0;
    for i in 0..=200 {
        let t = i as f64 / 200.0 * 10.0 / omega_c;
        let e_disc = golden_rule_exponent(discrete, ROOM, t).map_err(|e| e.to_string())?;
        let e_cont = golden_rule_exponent(continuous, ROOM, t).map_err(|e| e.to_string())?;
        agree = agree.max((e_disc - e_cont).abs());
    }
    check(
        short <= 1e-4 && agree <= 1e-4,
        format!("max |E/t^2 / alpha_D - 1| = {short:.2e} (limit 1e-4); max |E_quad - E_sum| = {agree:.2e} (limit 1e-4)"),
    )
}

fn golden_rule_dominance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0006);
    let times: Vec<f64> = (0..=400).map(|i| i as f64 * 0.25).collect();
    let mut violations = 0usize;
    let mut points = 0usize;
    for b in 0..10 {
        let modes: Vec<BathMode> = if b % 2 == 0 {
            let n = rng.random_range(1..=60);
            (0..n)
                .map(|_| {
                    BathMode::new(rng.random_range(0.01..=2.0), rng.random_range(0.0..=0.5))
                        .unwrap()
                })
                .collect()
        } else {
            let lam = rng.random_range(0.005..0.5);
            let wc = rng.random_range(0.01..0.5);
            let sd = if b % 4 == 1 {
                SpectralDensity::ohmic_with_lambda(lam, wc).unwrap()
            } else {
                SpectralDensity::debye(lam, wc).unwrap()
            };
            discretize(&sd, 2000, sd.default_omega_max()).unwrap().modes
        };
        let t = rng.random_range(50.0..600.0);
        let alpha = gaussian_decoherence_exponent(&modes, t, WidthModel::TanhHarmonic)
            .map_err(|e| e.to_string())?;
        for &time in &times {
            let d_sb = (-golden_rule_exponent(Bath::Modes(&modes), t, time)
                .map_err(|e| e.to_string())?)
            .exp();
            let d_g = (-alpha * time * time).exp();
            points += 1;
            if d_sb < d_g - 1e-12 {
                violations += 1;
            }
        }
    }
    check(
        violations == 0,
        format!("{violations} violations over {points} grid points in 10 baths"),
    )
}

fn oracle_equivalence() -> Outcome {
    let modes = vec![
        BathMode::new(0.05, 0.1).unwrap(),
        BathMode::new(0.1, 0.2).unwrap(),
        BathMode::new(0.2, 0.1).unwrap(),
    ];
    let spec = EnsembleSpec {
        modes: modes.clone(),
        temperature: ROOM,
        n_samples: 10_000,
        dt: 0.25,
        n_steps: 321,
        seed: 20240607,
    };
    let trajs = sample_gap_trajectory(&spec).map_err(|e| e.to_string())?;
    let est = ensemble_correlation(&trajs, 160).map_err(|e| e.to_string())?;
    let exact = analytic_classical_c(&modes, &est.times).map_err(|e| e.to_string())?;
    let inside = est
        .c
        .iter()
        .zip(&est.stderr)
        .zip(&exact)
        .filter(|((c, se), (_, x))| (*c - x).abs() <= (3.0 * **se).max(1e-12))
        .count();
    let frac = inside as f64 / exact.len() as f64;

    let lam: f64 = modes.iter().map(|m| m.lambda).sum();
    let curv: f64 = modes.iter().map(|m| m.lambda * m.omega * m.omega).sum();
    let expected_var = 2.0 * thermal_energy(ROOM).unwrap() * lam;
    let (var, var_se) = ensemble_variance(&trajs).map_err(|e| e.to_string())?;
    let var_ok = (var - expected_var).abs() <= 3.0 * var_se;

    let tau = fit_gaussian_timescale(&est.points(), 0.9).map_err(|e| e.to_string())?;
    let tau_exact = (lam / curv).sqrt();
    let tau_dev = (tau / tau_exact - 1.0).abs();
    check(
        frac >= 0.95 && var_ok && tau_dev <= 0.02,
        format!(
            "{:.1}% of lags within 3 sigma (need 95%); variance {var:.5} vs {expected_var:.5} +/- {:.5} eV^2; \
             tau_g {tau:.3} vs {tau_exact:.3} fs ({:.2}%, limit 2%)",
            100.0 * frac,
            3.0 * var_se,
            100.0 * tau_dev
        ),
    )
}

fn omega_for(x: f64, t: f64) -> f64 {
    2.0 * x * K_B * t / HBAR
}

fn width_limits_tanh() -> Outcome {
    let w = width_factor(omega_for(20.0, ROOM), ROOM, WidthModel::TanhHarmonic)
        .map_err(|e| e.to_string())?;
    check(
        (w - 1.0).abs() <= 1e-6,
        format!("TanhHarmonic W(x=20) = {w:.12} (coherent state 1, limit 1e-6)"),
    )
}

fn width_limits_nitzan_low_t() -> Outcome {
    let w = width_factor(omega_for(20.0, ROOM), ROOM, WidthModel::NitzanA)
        .map_err(|e| e.to_string())?;
    check(
        (w - 1.0).abs() <= 1e-6,
        format!(
            "NitzanA W(x=20) = {w:.9}, relative deviation {:.3e} from 1 (limit 1e-6)",
            (w - 1.0).abs()
        ),
    )
}

fn width_limits_high_t() -> Outcome {
    let om = omega_for(1e-2, ROOM);
    let a = width_factor(om, ROOM, WidthModel::NitzanA).map_err(|e| e.to_string())?;
    let h = width_factor(om, ROOM, WidthModel::HighTemperature).map_err(|e| e.to_string())?;
    let dev = (a / h - 1.0).abs();
    check(
        dev <= 1e-4,
        format!("NitzanA vs HighTemperature at x=0.01: relative deviation {dev:.3e} (limit 1e-4)"),
    )
}

fn styryl() -> Outcome {
    let case = reference_cases()
        .into_iter()
        .find(|c| c.input.label.starts_with("styryl"))
        .ok_or("styryl case missing")?;
    let flagged = case.tolerance.is_none() && case.note.is_some_and(|n| n.contains("ASSUMPTION"));
    let r = evaluate_case_study(&case.input).map_err(|e| e.to_string())?;
    let reproduced = (r.tau_d - 6.8).abs() < 0.05;
    // no band placement of a 115 nm shift gives 6.8 fs through <dU^2> = 2 lambda kT
    let best_fdt = (300..=900)
        .map(|abs| {
            let s = stokes_energy_from_wavelengths(abs as f64, abs as f64 + 115.0).unwrap();
            let input = CaseStudyInput::new("fdt", 40.0, ROOM, GapSpec::StokesEnergy(s)).unwrap();
            evaluate_case_study(&input).unwrap().tau_d
        })
        .fold(f64::INFINITY, f64::min);
    check(
        flagged && reproduced && best_fdt > 6.8 * 1.1,
        format!(
            "flagged={flagged}; tau_D = {:.2} fs under the documented band assumption; \
             shortest linear-response tau_D over 300-900 nm = {best_fdt:.1} fs",
            r.tau_d
        ),
    )
}

/// Criteria that cannot hold as stated. They still run and print FAIL; the
/// process exits non-zero only if something else fails or one of these starts
/// passing.
///
/// 8b: 1/(coth x - 1/x) - 1 decays like 1/x, so at x = 20 it is 5.3e-2, not 1e-6.
const KNOWN_FAILURES: &[&str] = &["8b "];

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("1  hydrated electron tau_D", hydrated_electron),
        (
            "2  FDT: 1.7 eV Stokes shift -> 0.21 eV rms",
            fdt_consistency,
        ),
        ("3  betaine-30/acetonitrile tau_D", betaine),
        (
            "4  general ratio collapses to 12(kT)^2/<dU^2>",
            high_temperature_collapse,
        ),
        (
            "5  spin-boson short-time equivalence",
            spin_boson_short_time,
        ),
        ("6  golden-rule dominance", golden_rule_dominance),
        ("7  Monte Carlo oracle equivalence", oracle_equivalence),
        ("8a width limit: tanh at x=20", width_limits_tanh),
        ("8b width limit: NitzanA at x=20", width_limits_nitzan_low_t),
        (
            "8c width limit: NitzanA vs highT at x=0.01",
            width_limits_high_t,
        ),
        (
            "9  styryl case flagged, assumption reproduces 6.8 fs",
            styryl,
        ),
    ];
    let mut failed = 0;
    let mut unexpected = Vec::new();
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_secs_f64() * 1e3;
        let known = KNOWN_FAILURES.iter().any(|k| name.starts_with(k));
        match outcome {
            Ok(d) => {
                println!("[PASS] {name}: {d} ({ms:.0} ms)");
                if known {
                    unexpected.push(format!("{name} passed but is listed as a known failure"));
                }
            }
            Err(d) => {
                failed += 1;
                println!("[FAIL] {name}: {d} ({ms:.0} ms)");
                if !known {
                    unexpected.push(format!("{name} failed"));
                }
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed ({} known)",
        criteria.len() - failed,
        KNOWN_FAILURES.len()
    );
    for u in &unexpected {
        println!("unexpected: {u}");
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
