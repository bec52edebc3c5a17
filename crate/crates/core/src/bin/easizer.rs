//! Command-line front end: seeded multi-run optimization experiments and
//! modified-vs-standard comparisons.

use clap::{Args, Parser, Subcommand};
use easizer::algorithms::{Algorithm, AlgorithmParams};
use easizer::harness::{
    compare_variants, emit_report, run_experiment, Backend, ExperimentConfig, HarnessError,
    ReportFormat,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "easizer", version, about = "Evolutionary op-amp sizing")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one algorithm on one problem across seeded runs and emit reports.
    Optimize(OptimizeArgs),
    /// Run a modified and a standard config on paired seeds and compare.
    Compare(CompareArgs),
}

#[derive(Args)]
struct OptimizeArgs {
    /// MABCO|MGA|MGWO|MPSO|SABCO|SGA|SGWO|SPSO
    #[arg(long)]
    algorithm: String,
    /// Preset name (e.g. two_stage_65n) or a problem spec file.
    #[arg(long)]
    problem: String,
    /// analytic | simulator | benchmark:<sphere|rosenbrock|constrained_sphere>
    #[arg(long, default_value = "analytic")]
    backend: String,
    #[arg(long, default_value_t = 20)]
    population: usize,
    #[arg(long, default_value_t = 300)]
    iterations: usize,
    #[arg(long, default_value_t = 10)]
    runs: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Output directory for the report files.
    #[arg(long)]
    out: PathBuf,
    /// Iteration numbers to snapshot, comma-separated.
    #[arg(long, value_delimiter = ',', default_values_t = [100usize, 200, 300])]
    checkpoints: Vec<usize>,
    /// csv | json | table
    #[arg(long, default_value = "table")]
    format: String,
    /// Dimension for the benchmark backends.
    #[arg(long, default_value_t = 6)]
    dimension: usize,
}

#[derive(Args)]
struct CompareArgs {
    /// TOML experiment config for the modified variant.
    #[arg(long)]
    modified: PathBuf,
    /// TOML experiment config for the standard variant.
    #[arg(long)]
    standard: PathBuf,
}

fn parse_algorithm(name: &str) -> Result<Algorithm, HarnessError> {
    Algorithm::parse(name)
        .ok_or_else(|| HarnessError::Config(format!("unknown algorithm `{name}`")))
}

fn optimize(args: &OptimizeArgs) -> Result<(), HarnessError> {
    let format = ReportFormat::parse(&args.format)
        .ok_or_else(|| HarnessError::Config(format!("unknown format `{}`", args.format)))?;
    let config = ExperimentConfig {
        algorithm: parse_algorithm(&args.algorithm)?,
        problem: args.problem.clone(),
        backend: args.backend.parse::<Backend>()?,
        population: args.population,
        iterations: args.iterations,
        runs: args.runs,
        master_seed: args.seed,
        workers: args.workers,
        checkpoints: args.checkpoints.clone(),
        benchmark_dimension: args.dimension,
        params: AlgorithmParams::default(),
    };
    let (stats, trace) = run_experiment(&config)?;
    let paths = emit_report(&stats, &trace, format, &args.out)?;
    for path in paths {
        println!("wrote {}", path.display());
    }
    println!(
        "{}: mean {} best {} worst {} stdev {} cspr {}",
        stats.algorithm.name(),
        stats.mean,
        stats.best,
        stats.worst,
        stats.stdev,
        stats.cspr
    );
    Ok(())
}

fn load_config(path: &PathBuf) -> Result<ExperimentConfig, HarnessError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))?;
    ExperimentConfig::from_toml(&text)
}

fn compare(args: &CompareArgs) -> Result<(), HarnessError> {
    let modified = load_config(&args.modified)?;
    let standard = load_config(&args.standard)?;
    let report = compare_variants(&modified, &standard)?;
    print!("{}", report.render());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Optimize(args) => optimize(args),
        Command::Compare(args) => compare(args),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                HarnessError::Backend(_) => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
