//! Crate-wide error type.

use std::path::PathBuf;

/// Errors produced by model evaluation, configuration, and I/O.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Invalid configuration or specification (bad bounds, missing keys).
    #[error("configuration error: {0}")]
    Config(String),

    /// A physical-domain precondition was violated (e.g. nonpositive pressure).
    #[error("domain error: {0}")]
    Domain(String),

    /// A model parameter fell outside its usable range by more than tolerance.
    #[error("parameter range error: {0}")]
    ParameterRange(String),

    /// The discharge solver produced a non-finite value.
    #[error("solver diverged at step {step} (t = {time:.3e} s): non-finite {field}")]
    SolverDiverged {
        step: u64,
        time: f64,
        field: &'static str,
    },

    /// The adaptive timestep collapsed below the hard floor.
    #[error("solver timestep collapsed at step {step}: dt = {dt:.3e} s")]
    TimestepCollapse { step: u64, dt: f64 },

    /// The solver exceeded its wall-clock budget before finishing.
    #[error("solver wall-clock budget exceeded after {elapsed:.1} s at step {step}")]
    SolverTimeout { elapsed: f64, step: u64 },

    /// A data file failed to parse; carries the 1-based line number.
    #[error("parse error in {path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    /// A metric is undefined for the given inputs (e.g. zero data norm).
    #[error("undefined metric: {0}")]
    UndefinedMetric(String),

    /// Divergence angle undefined because the integrated beam current is zero.
    #[error("undefined divergence: {0}")]
    UndefinedDivergence(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
