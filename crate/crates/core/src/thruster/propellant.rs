//! Propellant species data: ionization rate tables and collision constants.
//!
//! Rate tables for xenon and krypton are bundled with the crate; they are
//! Arrhenius fits `k(T_e) = a exp(-b / T_e)` tabulated on a logarithmic
//! temperature grid (see the headers of the CSV files under `data/`).
//! Users may substitute their own tables as long as they are nonnegative
//! and monotone nondecreasing in electron temperature.

use std::path::Path;

use crate::constants::{KRYPTON_MASS, XENON_MASS};
use crate::error::{Error, Result};
use crate::math::lerp_clamped;

const XENON_TABLE: &str = include_str!("../../data/xenon_ionization.csv");
const KRYPTON_TABLE: &str = include_str!("../../data/krypton_ionization.csv");

/// Monotone table of ionization rate coefficient vs. electron temperature.
#[derive(Debug, Clone, PartialEq)]
pub struct RateTable {
    te: Vec<f64>,
    rate: Vec<f64>,
}

impl RateTable {
    /// Build from parallel arrays; `te` must be strictly increasing and
    /// `rate` nonnegative and monotone nondecreasing.
    pub fn new(te: Vec<f64>, rate: Vec<f64>) -> Result<Self> {
        if te.len() != rate.len() || te.len() < 2 {
            return Err(Error::Config(format!(
                "rate table needs matching arrays of length >= 2, got {}/{}",
                te.len(),
                rate.len()
            )));
        }
        for w in te.windows(2) {
            if !(w[1] > w[0]) {
                return Err(Error::Config("rate table temperatures must be strictly increasing".into()));
            }
        }
        for (i, w) in rate.windows(2).enumerate() {
            if w[0] < 0.0 || w[1] < w[0] {
                return Err(Error::Config(format!(
                    "rate table must be nonnegative and monotone nondecreasing (violated near row {i})"
                )));
            }
        }
        Ok(RateTable { te, rate })
    }

    /// Parse `T_e,k` CSV rows; `#` lines are comments.
    pub fn from_csv_str(text: &str, source: &str) -> Result<Self> {
        let mut te = Vec::new();
        let mut rate = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split(',');
            let t: f64 = parts
                .next()
                .and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| Error::Parse {
                    path: source.into(),
                    line: lineno + 1,
                    message: "expected T_e,k row".into(),
                })?;
            let k: f64 = parts
                .next()
                .and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| Error::Parse {
                    path: source.into(),
                    line: lineno + 1,
                    message: "expected T_e,k row".into(),
                })?;
            te.push(t);
            rate.push(k);
        }
        RateTable::new(te, rate)
    }

    pub fn from_csv_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_csv_str(&text, &path.display().to_string())
    }

    /// Rate coefficient (m^3/s) at electron temperature `te` (eV),
    /// linearly interpolated and clamped at the table ends.
    pub fn value(&self, te: f64) -> f64 {
        lerp_clamped(&self.te, &self.rate, te)
    }

    /// A table that is identically zero (for advection-only test limits).
    pub fn zero() -> Self {
        RateTable {
            te: vec![0.1, 1000.0],
            rate: vec![0.0, 0.0],
        }
    }
}

/// Propellant species description for the discharge solver.
#[derive(Debug, Clone, PartialEq)]
pub struct PropellantSpec {
    pub name: String,
    /// Ion (= atom) mass (kg).
    pub ion_mass: f64,
    /// Effective energy cost per ionization event including excitation (eV).
    pub ionization_cost_ev: f64,
    /// Electron-neutral momentum-transfer rate coefficient (m^3/s) at the
    /// 4 eV reference temperature; scales with electron thermal speed.
    pub electron_neutral_rate: f64,
    pub ionization_rate: RateTable,
}

impl PropellantSpec {
    /// Momentum-transfer rate at electron temperature `te` (eV):
    /// constant cross section times the thermal speed.
    pub fn momentum_transfer_rate(&self, te: f64) -> f64 {
        self.electron_neutral_rate * (te.max(0.01) / 4.0).sqrt()
    }

    pub fn xenon() -> Self {
        PropellantSpec {
            name: "xenon".into(),
            ion_mass: XENON_MASS,
            ionization_cost_ev: 25.0,
            electron_neutral_rate: 3.0e-13,
            ionization_rate: RateTable::from_csv_str(XENON_TABLE, "xenon_ionization.csv")
                .expect("bundled xenon table is valid"),
        }
    }

    pub fn krypton() -> Self {
        PropellantSpec {
            name: "krypton".into(),
            ion_mass: KRYPTON_MASS,
            ionization_cost_ev: 28.0,
            electron_neutral_rate: 2.5e-13,
            ionization_rate: RateTable::from_csv_str(KRYPTON_TABLE, "krypton_ionization.csv")
                .expect("bundled krypton table is valid"),
        }
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "xenon" | "xe" => Ok(Self::xenon()),
            "krypton" | "kr" => Ok(Self::krypton()),
            other => Err(Error::Config(format!(
                "unknown propellant '{other}' (expected xenon or krypton)"
            ))),
        }
    }
}
