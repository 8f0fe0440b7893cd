//! 1-D axial quasineutral multi-fluid discharge solver.
//!
//! Models the discharge channel and near plume of a Hall thruster on a
//! uniform axial grid: neutral continuity at constant axial speed, ion
//! continuity and momentum with an isothermal pressure, inertialess
//! electrons closed by a generalized Ohm's law with anomalous cross-field
//! transport, and an electron energy transport equation. The total
//! current density is a single scalar per time step, fixed by requiring
//! the integrated electric field to match the applied potential drop, so
//! charge conservation is structural.
//!
//! Outputs (thrust, discharge current, ion beam current, plasma profiles)
//! are time-averaged over a configurable window at the end of the
//! simulated interval.

pub mod anomalous;
pub mod propellant;
mod solver;

pub use anomalous::{anomalous_inverse_hall, pressure_shift, pressure_shift_normalized, AnomParams};
pub use propellant::{PropellantSpec, RateTable};

use crate::constants::K_B;
use crate::error::{Error, Result};
use crate::params::{OperatingCondition, ThrusterGroup};

/// Channel and domain geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThrusterGeometry {
    /// Discharge channel length (m).
    pub channel_length: f64,
    /// Channel inner wall radius (m).
    pub inner_radius: f64,
    /// Channel outer wall radius (m).
    pub outer_radius: f64,
    /// Simulated domain length (m); defaults to three channel lengths.
    pub domain_length: f64,
    /// Magnetically shielded wall-loss branch.
    pub wall_shielded: bool,
}

impl ThrusterGeometry {
    pub fn new(
        channel_length: f64,
        inner_radius: f64,
        outer_radius: f64,
        domain_length: Option<f64>,
        wall_shielded: bool,
    ) -> Result<Self> {
        if !(channel_length > 0.0) {
            return Err(Error::Config(format!("channel length must be positive, got {channel_length}")));
        }
        if !(inner_radius > 0.0 && inner_radius < outer_radius) {
            return Err(Error::Config(format!(
                "need 0 < inner radius < outer radius, got {inner_radius}/{outer_radius}"
            )));
        }
        let domain_length = domain_length.unwrap_or(3.0 * channel_length);
        if domain_length < channel_length {
            return Err(Error::Config(format!(
                "domain length {domain_length} shorter than channel length {channel_length}"
            )));
        }
        Ok(ThrusterGeometry {
            channel_length,
            inner_radius,
            outer_radius,
            domain_length,
            wall_shielded,
        })
    }

    /// Annular channel cross-section area (m^2).
    pub fn channel_area(&self) -> f64 {
        std::f64::consts::PI * (self.outer_radius * self.outer_radius - self.inner_radius * self.inner_radius)
    }

    /// Radial channel width (m).
    pub fn channel_width(&self) -> f64 {
        self.outer_radius - self.inner_radius
    }
}

/// Two-sided Gaussian radial magnetic field profile: the configuration
/// surface for a known field map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MagneticProfile {
    /// Peak field strength (T).
    pub b_max: f64,
    /// Axial location of the peak (m).
    pub z_peak: f64,
    /// Gaussian width upstream of the peak (m).
    pub width_upstream: f64,
    /// Gaussian width downstream of the peak (m).
    pub width_downstream: f64,
}

impl MagneticProfile {
    pub fn new(b_max: f64, z_peak: f64, width_upstream: f64, width_downstream: f64) -> Result<Self> {
        if !(b_max > 0.0) {
            return Err(Error::Config(format!("peak field must be positive, got {b_max}")));
        }
        if !(width_upstream > 0.0 && width_downstream > 0.0) {
            return Err(Error::Config("magnetic profile widths must be positive".into()));
        }
        Ok(MagneticProfile { b_max, z_peak, width_upstream, width_downstream })
    }

    /// Field strength (T) at axial position `z` (m).
    pub fn field(&self, z: f64) -> f64 {
        let w = if z < self.z_peak { self.width_upstream } else { self.width_downstream };
        let x = (z - self.z_peak) / w;
        self.b_max * (-x * x).exp()
    }
}

/// Numerical settings for the discharge solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverSettings {
    /// Number of uniform grid cells.
    pub cells: usize,
    /// Simulated physical time (s).
    pub duration: f64,
    /// Time from which outputs are averaged (s).
    pub averaging_start: f64,
    /// CFL number for the explicit heavy-species step.
    pub cfl: f64,
    /// Wall-clock budget for one solve (s).
    pub wall_clock_limit: f64,
    /// Fixed ion temperature for the isothermal pressure term (eV).
    pub ion_temperature_ev: f64,
    /// Density floor for heavy species (m^-3).
    pub density_floor: f64,
    /// Electron temperature floor (eV).
    pub te_floor: f64,
    /// Facility background neutral temperature (K).
    pub background_temp_k: f64,
    /// Peak of the seed plasma density profile at start-up (m^-3).
    pub initial_plasma_density: f64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        SolverSettings {
            cells: 100,
            duration: 1.0e-3,
            averaging_start: 0.5e-3,
            cfl: 0.8,
            wall_clock_limit: 60.0,
            ion_temperature_ev: 0.1,
            density_floor: 1e12,
            te_floor: 0.1,
            background_temp_k: 300.0,
            initial_plasma_density: 3e17,
        }
    }
}

impl SolverSettings {
    pub fn validate(&self) -> Result<()> {
        if self.cells < 8 {
            return Err(Error::Config(format!("need at least 8 cells, got {}", self.cells)));
        }
        if !(self.duration > 0.0) || !(self.averaging_start >= 0.0) || self.averaging_start >= self.duration {
            return Err(Error::Config(format!(
                "averaging window [{}, {}] is invalid",
                self.averaging_start, self.duration
            )));
        }
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            return Err(Error::Config(format!("CFL must be in (0, 1], got {}", self.cfl)));
        }
        Ok(())
    }
}

/// Full static configuration of one thruster.
#[derive(Debug, Clone, PartialEq)]
pub struct ThrusterConfig {
    pub geometry: ThrusterGeometry,
    pub field: MagneticProfile,
    pub propellant: PropellantSpec,
    pub settings: SolverSettings,
}

impl ThrusterConfig {
    /// SPT-100-class reference configuration (unshielded, xenon).
    /// Geometry and field values are literature-approximate defaults;
    /// replace with measured values for quantitative work.
    pub fn spt100_like() -> Self {
        ThrusterConfig {
            geometry: ThrusterGeometry::new(0.025, 0.035, 0.05, None, false)
                .expect("valid reference geometry"),
            field: MagneticProfile::new(0.015, 0.025, 0.011, 0.018)
                .expect("valid reference field"),
            propellant: PropellantSpec::xenon(),
            settings: SolverSettings::default(),
        }
    }

    /// Magnetically-shielded krypton configuration in the H9 class.
    /// Approximate public-domain scale only.
    pub fn h9_like() -> Self {
        ThrusterConfig {
            geometry: ThrusterGeometry::new(0.033, 0.05, 0.07, None, true)
                .expect("valid reference geometry"),
            field: MagneticProfile::new(0.018, 0.033, 0.014, 0.024)
                .expect("valid reference field"),
            propellant: PropellantSpec::krypton(),
            settings: SolverSettings::default(),
        }
    }

    /// Coarse, short-duration variant for fast synthetic studies.
    pub fn cheapened(mut self) -> Self {
        self.settings.cells = 50;
        self.settings.duration = 3.0e-4;
        self.settings.averaging_start = 1.5e-4;
        self
    }
}

/// Time-averaged solver outputs and profiles.
#[derive(Debug, Clone, PartialEq)]
pub struct ThrusterOutput {
    /// Uncorrected thrust (N): exit-plane ion momentum flux.
    pub thrust: f64,
    /// Discharge current (A).
    pub discharge_current: f64,
    /// Ion beam current at the exit plane (A).
    pub ion_beam_current: f64,
    /// Exit mass flux of ions plus neutrals (kg/s).
    pub exit_mass_flux: f64,
    /// Ingested background-neutral mass flow (kg/s).
    pub ingestion_mass_flow: f64,
    /// Worst per-cell deviation of reconstructed total current density
    /// from the scalar closure value, relative. Zero up to rounding: the
    /// current density is a single scalar per step by construction.
    pub current_uniformity_residual: f64,
    /// Cell-center axial coordinates (m).
    pub z: Vec<f64>,
    pub neutral_density: Vec<f64>,
    pub ion_density: Vec<f64>,
    pub ion_velocity: Vec<f64>,
    pub electron_temperature: Vec<f64>,
    pub potential: Vec<f64>,
    pub electric_field: Vec<f64>,
    /// Averaging window actually used (s, s).
    pub averaging_window: (f64, f64),
    /// Total time steps taken.
    pub steps: u64,
}

impl ThrusterOutput {
    /// `(z, u_ion)` pairs for the axial ion velocity profile.
    pub fn ion_velocity_profile(&self) -> Vec<(f64, f64)> {
        self.z.iter().copied().zip(self.ion_velocity.iter().copied()).collect()
    }
}

/// Mass flow (kg/s) of facility background neutrals ingested through the
/// channel exit plane: the one-sided flux of a stationary Maxwellian at
/// pressure `p_b` and temperature `t_bg`, scaled by `f_n`.
pub fn ingestion_flow(p_b: f64, t_bg: f64, geometry: &ThrusterGeometry, f_n: f64, particle_mass: f64) -> Result<f64> {
    if p_b < 0.0 {
        return Err(Error::Domain(format!("background pressure must be >= 0, got {p_b}")));
    }
    if !(t_bg > 0.0) {
        return Err(Error::Domain(format!("background temperature must be positive, got {t_bg}")));
    }
    let n_bg = p_b / (K_B * t_bg);
    let c_bar = (8.0 * K_B * t_bg / (std::f64::consts::PI * particle_mass)).sqrt();
    Ok(f_n * geometry.channel_area() * 0.25 * n_bg * c_bar * particle_mass)
}

/// Uncorrected thrust (N) from the exit-plane ion momentum flux.
pub fn thrust_uncorrected(ion_density_exit: f64, ion_velocity_exit: f64, geometry: &ThrusterGeometry, ion_mass: f64) -> f64 {
    geometry.channel_area() * ion_mass * ion_density_exit * ion_velocity_exit * ion_velocity_exit
}

/// Discharge current (A) from the spatially uniform total current density.
pub fn discharge_current(j_total: f64, geometry: &ThrusterGeometry) -> f64 {
    geometry.channel_area() * j_total
}

/// Default cathode-boundary electron temperature (eV) when no calibrated
/// cathode group accompanies the solve.
pub const DEFAULT_CATHODE_TE: f64 = 3.0;

/// Integrate the discharge and return time-averaged outputs.
///
/// `v_cc` is the cathode-boundary potential from the cathode coupling
/// model; the applied drop across the domain is `V_d - V_cc`.
/// `t_cathode_ev` sets the Dirichlet electron temperature at the cathode
/// boundary (the calibrated cathode electron temperature in the coupled
/// system).
pub fn solve_discharge(
    config: &ThrusterConfig,
    theta: &ThrusterGroup,
    condition: &OperatingCondition,
    v_cc: f64,
    t_cathode_ev: f64,
) -> Result<ThrusterOutput> {
    config.settings.validate()?;
    if v_cc >= condition.discharge_voltage {
        return Err(Error::Domain(format!(
            "cathode coupling voltage {v_cc} V must be below the discharge voltage {} V",
            condition.discharge_voltage
        )));
    }
    solver::run(config, theta, condition, v_cc, t_cathode_ev)
}
