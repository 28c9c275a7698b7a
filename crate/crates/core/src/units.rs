//! Physical constants and unit handling.
//!
//! Everything inside the crate works in eV, fs, K and rad/fs. Masses and
//! lengths never appear on their own: bath modes are described by their
//! frequency and reorganization energy, and every formula in use is
//! mass-independent in that parameterization.
//!
//! Constants are CODATA 2018.

use std::fmt;
use std::str::FromStr;

use crate::error::{domain, Error, Result};

/// Reduced Planck constant (eV fs).
pub const HBAR: f64 = 0.6582119569;

/// Boltzmann constant (eV / K).
pub const K_B: f64 = 8.617333262e-5;

/// Planck constant times speed of light (eV nm).
pub const HC_EV_NM: f64 = 1239.841984;

/// Photon energy of one wavenumber (eV per cm^-1).
pub const EV_PER_WAVENUMBER: f64 = HC_EV_NM * 1.0e-7;

/// Physical dimension of a [`Quantity`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Energy,
    Time,
    AngularFrequency,
    Temperature,
    Dimensionless,
}

/// External units understood by the parser and by [`convert`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unit {
    ElectronVolt,
    Wavenumber,
    RadPerFs,
    Femtosecond,
    Picosecond,
    Kelvin,
    /// Photon wavelength in nm, mapped to energy through E = hc/λ.
    NanometerPhoton,
    Dimensionless,
}

impl Unit {
    pub fn dimension(self) -> Dimension {
        match self {
            Unit::ElectronVolt | Unit::Wavenumber | Unit::NanometerPhoton => Dimension::Energy,
            Unit::RadPerFs => Dimension::AngularFrequency,
            Unit::Femtosecond | Unit::Picosecond => Dimension::Time,
            Unit::Kelvin => Dimension::Temperature,
            Unit::Dimensionless => Dimension::Dimensionless,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Unit::ElectronVolt => "eV",
            Unit::Wavenumber => "cm-1",
            Unit::RadPerFs => "rad/fs",
            Unit::Femtosecond => "fs",
            Unit::Picosecond => "ps",
            Unit::Kelvin => "K",
            Unit::NanometerPhoton => "nm",
            Unit::Dimensionless => "",
        }
    }

    /// Value in this unit -> value in the internal unit of its dimension.
    fn to_internal(self, v: f64) -> Result<f64> {
        Ok(match self {
            Unit::ElectronVolt
            | Unit::RadPerFs
            | Unit::Femtosecond
            | Unit::Kelvin
            | Unit::Dimensionless => v,
            Unit::Wavenumber => v * EV_PER_WAVENUMBER,
            Unit::Picosecond => v * 1.0e3,
            Unit::NanometerPhoton => {
                if v <= 0.0 {
                    return domain(format!("photon wavelength must be positive, got {v} nm"));
                }
                HC_EV_NM / v
            }
        })
    }

    fn out_of_internal(self, v: f64) -> Result<f64> {
        Ok(match self {
            Unit::ElectronVolt
            | Unit::RadPerFs
            | Unit::Femtosecond
            | Unit::Kelvin
            | Unit::Dimensionless => v,
            Unit::Wavenumber => v / EV_PER_WAVENUMBER,
            Unit::Picosecond => v * 1.0e-3,
            Unit::NanometerPhoton => {
                if v <= 0.0 {
                    return domain(format!("photon energy must be positive, got {v} eV"));
                }
                HC_EV_NM / v
            }
        })
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl FromStr for Unit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "eV" | "ev" => Unit::ElectronVolt,
            "cm-1" | "cm^-1" | "/cm" => Unit::Wavenumber,
            "rad/fs" | "fs-1" | "/fs" => Unit::RadPerFs,
            "fs" => Unit::Femtosecond,
            "ps" => Unit::Picosecond,
            "K" => Unit::Kelvin,
            "nm" => Unit::NanometerPhoton,
            other => {
                return Err(Error::Conversion {
                    from: other.to_string(),
                    to: "known unit".into(),
                })
            }
        })
    }
}

/// A scalar stored in the internal unit of its dimension.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity {
    value: f64,
    dimension: Dimension,
}

impl Quantity {
    /// Builds a quantity from a value expressed in `unit`.
    pub fn new(value: f64, unit: Unit) -> Result<Self> {
        Ok(Quantity {
            value: unit.to_internal(value)?,
            dimension: unit.dimension(),
        })
    }

    pub fn energy(ev: f64) -> Self {
        Quantity {
            value: ev,
            dimension: Dimension::Energy,
        }
    }

    pub fn time(fs: f64) -> Self {
        Quantity {
            value: fs,
            dimension: Dimension::Time,
        }
    }

    pub fn angular_frequency(rad_per_fs: f64) -> Self {
        Quantity {
            value: rad_per_fs,
            dimension: Dimension::AngularFrequency,
        }
    }

    pub fn temperature(kelvin: f64) -> Self {
        Quantity {
            value: kelvin,
            dimension: Dimension::Temperature,
        }
    }

    /// Value in the internal unit (eV, fs, rad/fs or K).
    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn dimension(&self) -> Dimension {
        self.dimension
    }

    /// Value re-expressed in `unit`, crossing energy and angular frequency
    /// through ħ where needed.
    pub fn value_in(&self, unit: Unit) -> Result<f64> {
        unit.out_of_internal(convert(*self, unit)?.value)
    }

    /// Parses strings such as `10.6fs`, `0.21eV`, `298K`, `1500cm-1`.
    /// A bare number is rejected.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        // longest numeric prefix; the remainder is the unit
        let split = s
            .char_indices()
            .map(|(i, c)| i + c.len_utf8())
            .rfind(|&i| s[..i].parse::<f64>().is_ok())
            .unwrap_or(0);
        let (num, unit) = s.split_at(split);
        let unit = unit.trim();
        if unit.is_empty() {
            return Err(Error::Parse {
                line: 0,
                msg: format!("'{s}' has no unit suffix"),
            });
        }
        let value: f64 = num.parse().map_err(|_| Error::Parse {
            line: 0,
            msg: format!("'{num}' is not a number"),
        })?;
        Quantity::new(value, unit.parse()?)
    }
}

/// `k_B T` in eV.
pub fn thermal_energy(temperature: f64) -> Result<f64> {
    if !(temperature > 0.0) {
        return domain(format!("temperature must be positive, got {temperature} K"));
    }
    Ok(K_B * temperature)
}

/// Re-expresses `q` in the dimension of `target`. The returned quantity is
/// still stored internally; read it back with [`Quantity::value_in`].
pub fn convert(q: Quantity, target: Unit) -> Result<Quantity> {
    use Dimension::*;
    let to = target.dimension();
    let value = match (q.dimension, to) {
        (a, b) if a == b => q.value,
        (Energy, AngularFrequency) => q.value / HBAR,
        (AngularFrequency, Energy) => q.value * HBAR,
        (from, to) => {
            return Err(Error::Conversion {
                from: format!("{from:?}"),
                to: format!("{to:?}"),
            })
        }
    };
    Ok(Quantity {
        value,
        dimension: to,
    })
}
