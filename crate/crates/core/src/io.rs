//! Plain-text formats.
//!
//! * gap trajectories: two columns, t (fs) and U (eV), uniform spacing
//! * spectral density tables: two columns, ω (cm⁻¹) and J_eff (eV)
//! * case-study batches: `label, tau_g_fs, temperature_K, kind, value`
//!   with kind one of `rms_eV`, `stokes_eV`, `stokes_nm_pair`
//!   (value `abs_nm:em_nm`)
//! * CSV output: one `#` configuration line, a column-name line, rows
//!
//! Blank lines and lines starting with `#` are skipped on input. Columns
//! may be separated by whitespace or commas.

use std::io::{BufRead, Write};

use crate::bath::SpectralDensity;
use crate::error::{Error, Result};
use crate::relation::{CaseStudyInput, GapSpec};
use crate::solvation::GapTrajectory;
use crate::units::{Quantity, Unit};

/// Relative tolerance on the spacing of trajectory time stamps.
pub const DT_TOLERANCE: f64 = 1e-9;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn data_lines<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(usize, String)>> {
    reader.lines().enumerate().filter_map(|(i, l)| match l {
        Err(e) => Some(Err(e.into())),
        Ok(l) => {
            let t = l.trim();
            if t.is_empty() || t.starts_with('#') {
                None
            } else {
                Some(Ok((i + 1, t.to_string())))
            }
        }
    })
}

fn split_fields(line: &str) -> Vec<&str> {
    line.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .collect()
}

fn two_columns<R: BufRead>(reader: R) -> Result<Vec<(f64, f64)>> {
    let mut out = Vec::new();
    for item in data_lines(reader) {
        let (n, line) = item?;
        let f = split_fields(&line);
        if f.len() != 2 {
            return Err(parse_err(
                n,
                format!("expected 2 columns, found {}", f.len()),
            ));
        }
        let a: f64 = f[0]
            .parse()
            .map_err(|_| parse_err(n, format!("bad number '{}'", f[0])))?;
        let b: f64 = f[1]
            .parse()
            .map_err(|_| parse_err(n, format!("bad number '{}'", f[1])))?;
        out.push((a, b));
    }
    Ok(out)
}

/// Reads a trajectory and checks that time stamps are uniformly spaced.
pub fn read_gap_trajectory<R: BufRead>(reader: R) -> Result<GapTrajectory> {
    let rows = two_columns(reader)?;
    if rows.len() < 2 {
        return Err(parse_err(0, "trajectory needs at least two rows"));
    }
    let t0 = rows[0].0;
    let dt = rows[1].0 - t0;
    if !(dt > 0.0) {
        return Err(parse_err(2, "time stamps must increase"));
    }
    for (i, r) in rows.iter().enumerate() {
        let expected = t0 + i as f64 * dt;
        if (r.0 - expected).abs() > DT_TOLERANCE * dt * (i.max(1) as f64) {
            return Err(parse_err(
                i + 1,
                format!("non-uniform spacing at t = {} fs", r.0),
            ));
        }
    }
    GapTrajectory::new(dt, rows.into_iter().map(|r| r.1).collect())
}

pub fn write_gap_trajectory<W: Write>(
    mut w: W,
    traj: &GapTrajectory,
    comment: Option<&str>,
) -> Result<()> {
    if let Some(c) = comment {
        writeln!(w, "# {c}")?;
    }
    writeln!(w, "# t_fs U_eV")?;
    for (i, u) in traj.samples().iter().enumerate() {
        writeln!(w, "{} {:.17e}", i as f64 * traj.dt(), u)?;
    }
    Ok(())
}

/// Reads a tabulated J_eff with ω in cm⁻¹.
pub fn read_spectral_table<R: BufRead>(reader: R) -> Result<SpectralDensity> {
    let rows = two_columns(reader)?;
    let pts = rows
        .into_iter()
        .map(|(nu, j)| {
            Ok((
                Quantity::new(nu, Unit::Wavenumber)?.value_in(Unit::RadPerFs)?,
                j,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    SpectralDensity::tabulated(pts)
}

fn parse_gap_spec(kind: &str, value: &str, line: usize) -> Result<GapSpec> {
    let num = |s: &str| -> Result<f64> {
        s.trim()
            .parse()
            .map_err(|_| parse_err(line, format!("bad number '{s}'")))
    };
    match kind {
        "rms_eV" => Ok(GapSpec::Rms(num(value)?)),
        "stokes_eV" => Ok(GapSpec::StokesEnergy(num(value)?)),
        "stokes_nm_pair" => {
            let (a, e) = value
                .split_once(':')
                .ok_or_else(|| parse_err(line, "stokes_nm_pair needs abs_nm:em_nm"))?;
            Ok(GapSpec::StokesWavelengths {
                absorption_nm: num(a)?,
                emission_nm: num(e)?,
            })
        }
        other => Err(parse_err(line, format!("unknown gap kind '{other}'"))),
    }
}

/// Parses a case-study batch file.
pub fn read_case_batch<R: BufRead>(reader: R) -> Result<Vec<CaseStudyInput>> {
    let mut out = Vec::new();
    for item in data_lines(reader) {
        let (n, line) = item?;
        let f: Vec<&str> = line.split(',').map(str::trim).collect();
        if f.len() != 5 {
            return Err(parse_err(
                n,
                format!("expected 5 comma-separated fields, found {}", f.len()),
            ));
        }
        let tau_g: f64 = f[1]
            .parse()
            .map_err(|_| parse_err(n, format!("bad tau_g '{}'", f[1])))?;
        let temp: f64 = f[2]
            .parse()
            .map_err(|_| parse_err(n, format!("bad temperature '{}'", f[2])))?;
        let gap = parse_gap_spec(f[3], f[4], n)?;
        out.push(
            CaseStudyInput::new(f[0], tau_g, temp, gap).map_err(|e| parse_err(n, e.to_string()))?,
        );
    }
    Ok(out)
}

/// In-memory CSV table as written by [`write_csv`].
#[derive(Debug, Clone, PartialEq)]
pub struct CsvTable {
    pub comment: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let i = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[i]).collect())
    }
}

pub fn write_csv<W: Write>(mut w: W, table: &CsvTable) -> Result<()> {
    writeln!(w, "# {}", table.comment)?;
    writeln!(w, "{}", table.columns.join(","))?;
    for row in &table.rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.12e}")).collect();
        writeln!(w, "{}", cells.join(","))?;
    }
    Ok(())
}

pub fn read_csv<R: BufRead>(reader: R) -> Result<CsvTable> {
    let mut comment = String::new();
    let mut columns: Option<Vec<String>> = None;
    let mut rows = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        if let Some(c) = t.strip_prefix('#') {
            if columns.is_none() && comment.is_empty() {
                comment = c.trim().to_string();
            }
            continue;
        }
        match &columns {
            None => columns = Some(t.split(',').map(|s| s.trim().to_string()).collect()),
            Some(cols) => {
                let row = t
                    .split(',')
                    .map(|s| {
                        s.trim()
                            .parse::<f64>()
                            .map_err(|_| parse_err(i + 1, format!("bad number '{s}'")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                if row.len() != cols.len() {
                    return Err(parse_err(i + 1, "row length differs from header"));
                }
                rows.push(row);
            }
        }
    }
    Ok(CsvTable {
        comment,
        columns: columns.ok_or_else(|| parse_err(0, "missing column header"))?,
        rows,
    })
}
