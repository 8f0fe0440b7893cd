//! Physical constants and unit conversions used throughout the crate.
//!
//! All internal quantities are SI: pressures in pascals, temperatures in
//! eV where noted (plasma convention), masses in kg, lengths in meters.

/// Elementary charge (C).
pub const Q_E: f64 = 1.602_176_634e-19;

/// Electron mass (kg).
pub const M_E: f64 = 9.109_383_701_5e-31;

/// Boltzmann constant (J/K).
pub const K_B: f64 = 1.380_649e-23;

/// Atomic mass unit (kg).
pub const AMU: f64 = 1.660_539_066_60e-27;

/// Xenon atomic mass (kg).
pub const XENON_MASS: f64 = 131.293 * AMU;

/// Krypton atomic mass (kg).
pub const KRYPTON_MASS: f64 = 83.798 * AMU;

/// Pascals per Torr.
pub const PA_PER_TORR: f64 = 133.322;

/// Pascals per microTorr.
pub const PA_PER_MICROTORR: f64 = PA_PER_TORR * 1e-6;

/// Convert a pressure in Torr to pascals.
pub fn torr_to_pa(torr: f64) -> f64 {
    torr * PA_PER_TORR
}

/// Convert a pressure in microTorr to pascals.
pub fn microtorr_to_pa(utorr: f64) -> f64 {
    utorr * PA_PER_MICROTORR
}

/// Convert a pressure in pascals to Torr.
pub fn pa_to_torr(pa: f64) -> f64 {
    pa / PA_PER_TORR
}
