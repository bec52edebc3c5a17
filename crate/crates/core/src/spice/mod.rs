//! External-simulator backend: render a netlist for either topology, run a
//! Berkeley-style simulator as a subprocess, and parse its measurement
//! output back into a performance report.
//!
//! Entirely optional — the analytic backend needs none of this — and gated
//! on a simulator binary plus device model cards being available.

mod evaluator;
mod netlist;
mod parse;
mod runner;

pub use evaluator::SimulatorEvaluator;
pub use netlist::{emit_netlist, NetlistTemplate};
pub use parse::{parse_measurements, render_measurements};
pub use runner::{run_simulation, SimulatorConfig};

use thiserror::Error;

/// Environment variable consulted for the simulator executable path.
pub const SIMULATOR_PATH_ENV: &str = "EASIZER_SIMULATOR";

#[derive(Debug, Error)]
pub enum SpiceError {
    #[error("template for {topology:?} must contain `{placeholder}` exactly once, found {count}")]
    BadPlaceholder {
        topology: crate::circuit::Topology,
        placeholder: String,
        count: usize,
    },
    #[error("position has {got} variables, template needs {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("simulator executable not found: {0}")]
    ExecutableNotFound(String),
    #[error("simulator timed out after {seconds} s (killed)")]
    Timeout { seconds: f64 },
    #[error("simulator exited with {status}; stderr:\n{stderr}")]
    NonzeroExit { status: String, stderr: String },
    #[error("measurement `{metric}` missing from simulator output")]
    MissingMeasurement { metric: &'static str },
    #[error("malformed measurement value on line `{line}`: {reason}")]
    MalformedMeasurement { line: String, reason: String },
    #[error("simulator I/O failure: {0}")]
    Io(#[from] std::io::Error),
}
