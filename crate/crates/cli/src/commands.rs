use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use solvdec::bath::{discretize, reduced_frequency, width_factor, SpectralDensity, WidthModel};
use solvdec::decoherence::{gaussian_exponent, golden_rule_curve, timescale, Bath};
use solvdec::io::{
    read_case_batch, read_gap_trajectory, read_spectral_table, write_csv, write_gap_trajectory,
    CsvTable,
};
use solvdec::oracle::{
    analytic_classical_c, ensemble_correlation, ensemble_variance, sample_gap_trajectory,
    EnsembleSpec,
};
use solvdec::relation::{evaluate_case_study, reference_cases, CaseStudyInput, GapSpec};
use solvdec::solvation::{estimate_c, fit_gaussian_timescale, stokes_from_variance};
use solvdec::units::thermal_energy;
use solvdec::{BathMode, Error, VERSION};

use crate::args::{
    CaseArgs, DensityKind, OracleArgs, RelateArgs, RespondArgs, SpinbosonArgs, WidthsArgs,
};

/// Failure of a subcommand, split by exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Numerical(String),
    /// Stdout was closed by the reader, e.g. `| head`.
    Closed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Quadrature { .. } | Error::Fit(_) | Error::Degenerate(_) => {
                Failure::Numerical(e.to_string())
            }
            Error::Io {
                kind: std::io::ErrorKind::BrokenPipe,
                ..
            } => Failure::Closed,
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return Failure::Closed;
        }
        Failure::Usage(e.to_string())
    }
}

pub type CmdResult = Result<(), Failure>;

fn open(path: &Path) -> Result<BufReader<File>, Failure> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit_csv(table: &CsvTable, path: Option<&Path>, out: &mut dyn Write) -> CmdResult {
    match path {
        Some(p) => {
            let f = File::create(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            write_csv(BufWriter::new(f), table)?;
        }
        None => write_csv(&mut *out, table)?,
    }
    Ok(())
}

fn grid(t_max: f64, dt: f64) -> Vec<f64> {
    let n = (t_max / dt + 1e-9).floor() as usize;
    (0..=n).map(|i| i as f64 * dt).collect()
}

pub fn relate(a: &RelateArgs, out: &mut dyn Write) -> CmdResult {
    let gap = match (a.rms, a.stokes, a.stokes_nm) {
        (Some(r), None, None) => GapSpec::Rms(r),
        (None, Some(s), None) => GapSpec::StokesEnergy(s),
        (None, None, Some((abs, em))) => GapSpec::StokesWavelengths {
            absorption_nm: abs,
            emission_nm: em,
        },
        _ => {
            return Err(Failure::Usage(
                "give exactly one of --rms, --stokes, --stokes-nm".into(),
            ))
        }
    };
    let input = CaseStudyInput::new("cli", a.tau_g, a.temp, gap)?;
    let r = evaluate_case_study(&input)?;
    let lo = evaluate_case_study(&CaseStudyInput {
        temperature: 293.0,
        ..input.clone()
    })?;
    let hi = evaluate_case_study(&CaseStudyInput {
        temperature: 300.0,
        ..input.clone()
    })?;

    let mut block = String::new();
    block.push_str(&format!("tau_g_fs={}\n", a.tau_g));
    block.push_str(&format!("temperature_K={}\n", a.temp));
    block.push_str(&format!("gap_input={gap}\n"));
    block.push_str(&format!("gap_variance_eV2={:.6e}\n", r.gap_variance));
    block.push_str(&format!("gap_rms_eV={:.6}\n", r.gap_variance.sqrt()));
    block.push_str(&format!("lambda_eV={:.6}\n", r.lambda));
    block.push_str(&format!("ratio_squared={:.6}\n", r.ratio_squared));
    block.push_str(&format!("ratio={:.6}\n", r.ratio()));
    block.push_str(&format!("tau_D_fs={:.4}\n", r.tau_d));
    block.push_str(&format!("pathway={}\n", r.pathway));

    write!(out, "{block}")?;
    writeln!(out)?;
    writeln!(
        out,
        "tau_D = {:.2} fs  (tau_g = {} fs, <dU^2>^1/2 = {:.4} eV, T = {} K)",
        r.tau_d,
        a.tau_g,
        r.gap_variance.sqrt(),
        a.temp
    )?;
    if matches!(gap, GapSpec::Rms(_)) {
        writeln!(
            out,
            "T sensitivity: {:.2} fs at 293 K, {:.2} fs at 300 K",
            lo.tau_d, hi.tau_d
        )?;
    } else {
        // a Stokes-shift input fixes λ, and <dU^2> = 2λk_BT moves with T
        writeln!(
            out,
            "T sensitivity (fixed Stokes shift): {:.2} fs at 293 K, {:.2} fs at 300 K",
            lo.tau_d, hi.tau_d
        )?;
    }
    if let Some(p) = &a.output {
        std::fs::write(p, &block).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

pub fn widths(a: &WidthsArgs, out: &mut dyn Write) -> CmdResult {
    let x = reduced_frequency(a.omega, a.temp)?;
    writeln!(out, "omega_rad_fs={:.6e}", a.omega)?;
    writeln!(out, "temperature_K={}", a.temp)?;
    writeln!(out, "x={x:.6e}")?;
    for m in WidthModel::ALL {
        writeln!(
            out,
            "W_{}={:.10e}",
            m.name(),
            width_factor(a.omega, a.temp, m)?
        )?;
    }
    Ok(())
}

fn density(a: &SpinbosonArgs) -> Result<SpectralDensity, Failure> {
    let need = |v: Option<f64>, flag: &str| {
        v.ok_or_else(|| Failure::Usage(format!("--density needs {flag}")))
    };
    Ok(match a.density {
        DensityKind::Ohmic => {
            let wc = need(a.omega_c, "--omega-c")?;
            match a.eta {
                Some(eta) => SpectralDensity::ohmic(eta, wc)?,
                None => {
                    SpectralDensity::ohmic_with_lambda(need(a.lambda, "--lambda or --eta")?, wc)?
                }
            }
        }
        DensityKind::Debye if a.eta.is_some() => {
            return Err(Failure::Usage(
                "--eta applies to the ohmic density only".into(),
            ))
        }
        DensityKind::Debye => {
            SpectralDensity::debye(need(a.lambda, "--lambda")?, need(a.omega_c, "--omega-c")?)?
        }
        DensityKind::Table => {
            let path = a
                .table
                .as_ref()
                .ok_or_else(|| Failure::Usage("--density table needs --table".into()))?;
            read_spectral_table(open(path)?)?
        }
    })
}

pub fn spinboson(a: &SpinbosonArgs, out: &mut dyn Write, log: &mut dyn Write) -> CmdResult {
    let sd = density(a)?;
    let omega_max = a.omega_max.unwrap_or_else(|| sd.default_omega_max());
    if !(a.dt > 0.0) || !(a.t_max >= 0.0) {
        return Err(Failure::Usage(
            "--dt must be positive and --t-max non-negative".into(),
        ));
    }
    let times = grid(a.t_max, a.dt);
    let bath = Bath::Density { sd: &sd, omega_max };

    let golden = golden_rule_curve(bath, a.temp, &times)?;
    let mut alphas = Vec::new();
    for m in WidthModel::ALL {
        alphas.push((m, gaussian_exponent(bath, a.temp, m)?));
    }
    let disc = discretize(&sd, a.modes, omega_max)?;
    if disc.tail_warning {
        writeln!(
            log,
            "warning: {:.2}% of the reorganization energy lies above omega_max",
            100.0 * disc.tail_fraction
        )?;
    }
    let classical = analytic_classical_c(&disc.modes, &times)?;

    let comment = format!(
        "solvdec {VERSION} spinboson density={} lambda_eV={} omega_c_rad_fs={} omega_max_rad_fs={omega_max} \
         T_K={} dt_fs={} t_max_fs={} modes={}",
        format!("{:?}", a.density).to_lowercase(),
        sd.total_reorganization(),
        sd.characteristic_frequency(),
        a.temp,
        a.dt,
        a.t_max,
        a.modes
    );
    let rows = times
        .iter()
        .enumerate()
        .map(|(i, &t)| {
            let mut row = vec![t, (-golden.exponents[i]).exp()];
            row.extend(alphas.iter().map(|(_, al)| (-al * t * t).exp()));
            row.push(classical[i].1);
            row
        })
        .collect();
    let table = CsvTable {
        comment,
        columns: [
            "t_fs",
            "D_goldenrule",
            "D_gaussian_tanh",
            "D_gaussian_nitzan",
            "D_gaussian_highT",
            "C_classical",
        ]
        .map(String::from)
        .to_vec(),
        rows,
    };
    emit_csv(&table, a.output.as_deref(), out)?;

    let (model, alpha) = alphas
        .iter()
        .find(|(m, _)| *m == a.width_model)
        .copied()
        .expect("all models present");
    writeln!(log, "tau_D({}) = {:.4} fs", model.name(), timescale(alpha)?)?;
    Ok(())
}

pub fn respond(a: &RespondArgs, out: &mut dyn Write, log: &mut dyn Write) -> CmdResult {
    let traj = read_gap_trajectory(open(&a.trajectory)?)?;
    let c = estimate_c(&traj, a.max_lag)?;
    let tau = fit_gaussian_timescale(&c, a.threshold)?;
    let mut comment = format!(
        "solvdec {VERSION} respond trajectory={} samples={} dt_fs={} max_lag_fs={} threshold={} mean_gap_eV={:.6} \
         gap_variance_eV2={:.6e} tau_g_fs={tau:.6}",
        a.trajectory.display(),
        traj.len(),
        traj.dt(),
        a.max_lag,
        a.threshold,
        traj.mean(),
        traj.variance()
    );
    if let Some(t) = a.temp {
        comment.push_str(&format!(
            " T_K={t} lambda_eV={:.6}",
            stokes_from_variance(traj.variance(), t)? / 2.0
        ));
    }
    let table = CsvTable {
        comment,
        columns: vec!["t_fs".into(), "C".into()],
        rows: c.iter().map(|&(t, v)| vec![t, v]).collect(),
    };
    emit_csv(&table, a.output.as_deref(), out)?;
    writeln!(log, "tau_g = {tau:.4} fs (fit window C >= {})", a.threshold)?;
    Ok(())
}

pub fn oracle(a: &OracleArgs, out: &mut dyn Write, log: &mut dyn Write) -> CmdResult {
    let modes = a
        .modes
        .iter()
        .map(|&(w, l)| BathMode::new(w, l))
        .collect::<solvdec::Result<Vec<_>>>()?;
    if !(a.dt > 0.0) {
        return Err(Failure::Usage("--dt must be positive".into()));
    }
    let lags = (a.max_lag / a.dt + 1e-9).floor() as usize;
    let spec = EnsembleSpec {
        modes: modes.clone(),
        temperature: a.temp,
        n_samples: a.samples,
        dt: a.dt,
        n_steps: 2 * lags + 1,
        seed: a.seed,
    };
    let trajs = sample_gap_trajectory(&spec)?;
    let est = ensemble_correlation(&trajs, lags)?;
    let exact = analytic_classical_c(&modes, &est.times)?;
    let tau = fit_gaussian_timescale(&est.points(), a.threshold)?;
    let lam: f64 = modes.iter().map(|m| m.lambda).sum();
    let curv: f64 = modes.iter().map(|m| m.lambda * m.omega * m.omega).sum();
    let tau_exact = (lam / curv).sqrt();

    let mode_list: Vec<String> = modes
        .iter()
        .map(|m| format!("{}:{}", m.omega, m.lambda))
        .collect();
    let comment = format!(
        "solvdec {VERSION} oracle seed={} samples={} T_K={} dt_fs={} max_lag_fs={} threshold={} modes_rad_fs_eV={}",
        a.seed,
        a.samples,
        a.temp,
        a.dt,
        a.max_lag,
        a.threshold,
        mode_list.join(";")
    );
    let rows = (0..est.times.len())
        .map(|k| vec![est.times[k], est.c[k], est.stderr[k], exact[k].1])
        .collect();
    let table = CsvTable {
        comment,
        columns: ["t_fs", "C_estimated", "C_stderr", "C_analytic"]
            .map(String::from)
            .to_vec(),
        rows,
    };
    emit_csv(&table, a.output.as_deref(), out)?;

    writeln!(log, "seed = {}", a.seed)?;
    writeln!(log, "tau_g fitted = {tau:.4} fs, analytic sqrt(sum lambda / sum lambda omega^2) = {tau_exact:.4} fs")?;
    writeln!(log, "mean error bar = {:.3e}", est.mean_stderr())?;
    if let Ok((var, se)) = ensemble_variance(&trajs) {
        let expected = 2.0 * thermal_energy(a.temp)? * lam;
        writeln!(
            log,
            "gap variance = {var:.6e} +/- {se:.1e} eV^2 (2 k_B T sum lambda = {expected:.6e})"
        )?;
    }
    if let Some(dir) = &a.dump_dir {
        std::fs::create_dir_all(dir)?;
        for (i, t) in trajs.iter().take(a.dump_count).enumerate() {
            let path = dir.join(format!("gap_{i:05}.dat"));
            let f = File::create(&path)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            write_gap_trajectory(
                BufWriter::new(f),
                t,
                Some(&format!(
                    "solvdec {VERSION} oracle seed={} sample={i}",
                    a.seed
                )),
            )?;
        }
    }
    Ok(())
}

pub fn casestudies(a: &CaseArgs, out: &mut dyn Write) -> CmdResult {
    writeln!(
        out,
        "{:<28} {:>8} {:>6} {:<24} {:>10} {:>11} {:>9}  status",
        "system", "tau_g/fs", "T/K", "gap", "tau_D/fs", "reported/fs", "dev"
    )?;
    match &a.file {
        None => {
            let mut notes = Vec::new();
            for case in reference_cases() {
                let r = evaluate_case_study(&case.input)?;
                let dev = (r.tau_d - case.reported_tau_d) / case.reported_tau_d;
                let status = match case.tolerance {
                    Some(tol) if dev.abs() <= tol => format!("PASS (<{:.0}%)", tol * 100.0),
                    Some(tol) => format!("FAIL (>{:.0}%)", tol * 100.0),
                    None => "ASSUMPTION".to_string(),
                };
                let gap = match case.input.gap {
                    GapSpec::Rms(v) => format!("rms={v:.4}eV"),
                    g => g.to_string(),
                };
                writeln!(
                    out,
                    "{:<28} {:>8} {:>6} {:<24} {:>10.2} {:>11.1} {:>8.1}%  {status}",
                    case.input.label,
                    case.input.tau_g,
                    case.input.temperature,
                    gap,
                    r.tau_d,
                    case.reported_tau_d,
                    100.0 * dev
                )?;
                if let Some(n) = case.note {
                    notes.push(format!("{}: {n}", case.input.label));
                }
            }
            for n in notes {
                writeln!(out, "note: {n}")?;
            }
        }
        Some(path) => {
            for input in read_case_batch(open(path)?)? {
                let r = evaluate_case_study(&input)?;
                writeln!(
                    out,
                    "{:<28} {:>8} {:>6} {:<24} {:>10.2} {:>11} {:>9}  -",
                    input.label,
                    input.tau_g,
                    input.temperature,
                    input.gap.to_string(),
                    r.tau_d,
                    "-",
                    "-"
                )?;
            }
        }
    }
    Ok(())
}
