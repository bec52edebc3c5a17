//! Experiment orchestration: configs, multi-seed parallel runs, statistics
//! in the Mean/Best/Worst/STDEV/MRT/CSPR shape, report emission, benchmark
//! functions, and modified-vs-standard comparisons.

mod benchmarks;
mod compare;
mod experiment;
mod report;

pub use benchmarks::BenchmarkEvaluator;
pub use compare::{compare_variants, ComparisonReport};
pub use experiment::{
    population_stdev, run_experiment, Backend, CheckpointStats, ConvergenceTrace, ExperimentConfig,
    RunRecord, RunStatistics,
};
pub use report::{
    emit_report, render_stats_csv, render_stats_table, render_trace_csv, ReportFormat,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    /// Bad configuration: caught before any run starts. CLI exit code 2.
    #[error("configuration error: {0}")]
    Config(String),
    /// Backend unavailable or failing. CLI exit code 3.
    #[error("backend failure: {0}")]
    Backend(String),
    #[error(transparent)]
    Core(#[from] crate::core::CoreError),
    #[error(transparent)]
    Circuit(#[from] crate::circuit::CircuitError),
    #[error("I/O failure: {0}")]
    Io(#[from] std::io::Error),
}
