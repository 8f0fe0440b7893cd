//! Coupled cathode-thruster-plume Hall thruster model with Bayesian
//! calibration and uncertainty quantification.
//!
//! The crate couples three component models — an analytic cathode
//! coupling law, a 1-D axial fluid discharge solver, and a semi-empirical
//! far-field plume expansion — into a single vector-valued model of
//! thruster behavior versus facility background pressure. On top of the
//! physics sit the calibration layers: dataset handling, a
//! delayed-rejection adaptive Metropolis (DRAM) sampler against a
//! dataset-normalized Gaussian likelihood, and posterior-predictive
//! uncertainty propagation with the associated error metrics.

pub mod cathode;
pub mod constants;
pub mod error;
pub mod math;
pub mod params;
pub mod plume;
pub mod thruster;

pub use error::{Error, Result};
