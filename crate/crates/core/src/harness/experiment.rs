use super::{BenchmarkEvaluator, HarnessError};
use crate::algorithms::{run_algorithm, Algorithm, AlgorithmParams};
use crate::circuit::AnalyticEvaluator;
use crate::core::spawn_rng_stream;
use crate::spice::{SimulatorConfig, SimulatorEvaluator};
use crate::{Evaluator, Real};
use rand::Rng as _;
use serde::{Deserialize, Serialize};
use std::str::FromStr;

/// Which evaluation backend an experiment runs against.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Backend {
    Analytic,
    Simulator,
    /// `benchmark:<name>` — one of the desk-scale test functions.
    Benchmark(String),
}

impl FromStr for Backend {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, HarnessError> {
        match s {
            "analytic" => Ok(Backend::Analytic),
            "simulator" => Ok(Backend::Simulator),
            _ => match s.strip_prefix("benchmark:") {
                Some(name) if BenchmarkEvaluator::names().contains(&name) => {
                    Ok(Backend::Benchmark(name.to_string()))
                }
                _ => Err(HarnessError::Config(format!("unknown backend `{s}`"))),
            },
        }
    }
}

impl TryFrom<String> for Backend {
    type Error = HarnessError;

    fn try_from(s: String) -> Result<Self, HarnessError> {
        s.parse()
    }
}

impl From<Backend> for String {
    fn from(b: Backend) -> String {
        match b {
            Backend::Analytic => "analytic".into(),
            Backend::Simulator => "simulator".into(),
            Backend::Benchmark(name) => format!("benchmark:{name}"),
        }
    }
}

fn default_workers() -> usize {
    1
}

fn default_checkpoints() -> Vec<usize> {
    vec![100, 200, 300]
}

fn default_benchmark_dimension() -> usize {
    6
}

/// One full experiment: an algorithm, a problem, and the run protocol.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub algorithm: Algorithm,
    /// Preset name or spec-file path for the circuit backends.
    pub problem: String,
    pub backend: Backend,
    pub population: usize,
    pub iterations: usize,
    pub runs: usize,
    pub master_seed: u64,
    #[serde(default = "default_workers")]
    pub workers: usize,
    #[serde(default = "default_checkpoints")]
    pub checkpoints: Vec<usize>,
    #[serde(default = "default_benchmark_dimension")]
    pub benchmark_dimension: usize,
    #[serde(default)]
    pub params: AlgorithmParams,
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, HarnessError> {
        toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        if self.runs < 1 {
            return Err(HarnessError::Config("runs must be >= 1".into()));
        }
        if self.population < 2 || self.iterations < 1 {
            return Err(HarnessError::Config(
                "population must be >= 2 and iterations >= 1".into(),
            ));
        }
        if self.workers < 1 {
            return Err(HarnessError::Config("workers must be >= 1".into()));
        }
        Ok(())
    }

    /// Construct the evaluator, failing before any run starts when the
    /// backend is unavailable.
    pub fn build_evaluator(&self) -> Result<Box<dyn Evaluator>, HarnessError> {
        match &self.backend {
            Backend::Analytic => {
                let (spec, tech) = self.load_problem()?;
                Ok(Box::new(AnalyticEvaluator::new(spec, tech)?))
            }
            Backend::Simulator => {
                let (spec, tech) = self.load_problem()?;
                let config = SimulatorConfig::from_env(
                    std::path::PathBuf::from("models.lib"),
                    std::env::temp_dir(),
                )
                .ok_or_else(|| {
                    HarnessError::Backend(format!(
                        "simulator backend needs {} set to the executable",
                        crate::spice::SIMULATOR_PATH_ENV
                    ))
                })?;
                if !config.executable.is_file() {
                    return Err(HarnessError::Backend(format!(
                        "simulator executable not found: {}",
                        config.executable.display()
                    )));
                }
                Ok(Box::new(SimulatorEvaluator::new(spec, tech, config)?))
            }
            Backend::Benchmark(name) => BenchmarkEvaluator::new(name, self.benchmark_dimension)
                .map(|b| Box::new(b) as Box<dyn Evaluator>)
                .ok_or_else(|| HarnessError::Config(format!("unknown benchmark `{name}`"))),
        }
    }

    fn load_problem(
        &self,
    ) -> Result<(crate::circuit::ProblemSpec, crate::circuit::TechnologyCard), HarnessError> {
        if let Some((spec, tech)) = crate::circuit::ProblemSpec::preset(&self.problem) {
            return Ok((spec, tech));
        }
        let path = std::path::Path::new(&self.problem);
        if path.is_file() {
            let text = std::fs::read_to_string(path)
                .map_err(|e| HarnessError::Config(format!("{}: {e}", path.display())))?;
            let file = crate::circuit::ProblemFile::from_toml(&text)?;
            return Ok((file.problem, file.technology));
        }
        Err(HarnessError::Config(format!(
            "`{}` is neither a preset ({}) nor a readable spec file",
            self.problem,
            crate::circuit::ProblemSpec::preset_names().join(", ")
        )))
    }
}

/// Outcome of a single seeded run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunRecord {
    pub run: usize,
    pub best_fitness: Real,
    pub feasible: bool,
    pub position: Vec<Real>,
    pub evaluations: u64,
    /// Wall seconds; kept out of the deterministic report files.
    #[serde(skip)]
    pub elapsed_seconds: f64,
}

/// Cross-run statistics of best fitness at one iteration count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckpointStats {
    pub iteration: usize,
    pub mean: Real,
    pub best: Real,
    pub worst: Real,
    pub stdev: Real,
}

/// Aggregate over the seeded runs: fitness statistics, the evaluation-count
/// average (simulations per run), checkpoint snapshots, and per-run records.
/// The mean run time is carried separately from the deterministic fields.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunStatistics {
    pub algorithm: Algorithm,
    pub problem: String,
    pub population: usize,
    pub iterations: usize,
    pub mean: Real,
    pub best: Real,
    pub worst: Real,
    /// Population (divide-by-n) standard deviation over run bests.
    pub stdev: Real,
    pub cspr: Real,
    pub checkpoints: Vec<CheckpointStats>,
    pub runs: Vec<RunRecord>,
    #[serde(skip)]
    pub mrt_seconds: f64,
}

/// Per-iteration mean and stdev (over runs) of the best-so-far fitness.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceTrace {
    pub mean: Vec<Real>,
    pub stdev: Vec<Real>,
}

/// Population standard deviation (divide by n).
pub fn population_stdev(values: &[Real]) -> Real {
    let n = values.len() as Real;
    let mean = values.iter().sum::<Real>() / n;
    (values.iter().map(|v| (v - mean) * (v - mean)).sum::<Real>() / n).sqrt()
}

fn cross_run_stats(iteration: usize, bests: &[Real]) -> CheckpointStats {
    CheckpointStats {
        iteration,
        mean: bests.iter().sum::<Real>() / bests.len() as Real,
        best: bests.iter().copied().fold(Real::INFINITY, Real::min),
        worst: bests.iter().copied().fold(Real::NEG_INFINITY, Real::max),
        stdev: population_stdev(bests),
    }
}

/// Execute the configured runs and aggregate.
///
/// Runs are distributed over `workers` threads; each run's stream of random
/// draws is keyed only by (master_seed, run index), so the statistics and
/// traces are identical for any worker count.
pub fn run_experiment(
    config: &ExperimentConfig,
) -> Result<(RunStatistics, ConvergenceTrace), HarnessError> {
    config.validate()?;
    let evaluator = config.build_evaluator()?;
    let results = {
        let evaluator: &dyn Evaluator = evaluator.as_ref();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.workers)
            .build()
            .map_err(|e| HarnessError::Config(e.to_string()))?;
        pool.install(|| {
            use rayon::prelude::*;
            (0..config.runs)
                .into_par_iter()
                .map(|run| {
                    let seed = spawn_rng_stream(config.master_seed, run as u64).gen::<u64>();
                    run_algorithm(
                        config.algorithm,
                        evaluator,
                        &config.params,
                        config.population,
                        config.iterations,
                        seed,
                    )
                })
                .collect::<Result<Vec<_>, _>>()
        })?
    };

    let records: Vec<RunRecord> = results
        .iter()
        .enumerate()
        .map(|(run, r)| RunRecord {
            run,
            best_fitness: r.best.fitness(),
            feasible: r.best.feasible,
            position: r.best.position.clone(),
            evaluations: r.evaluations,
            elapsed_seconds: r.elapsed_seconds,
        })
        .collect();

    let bests: Vec<Real> = records.iter().map(|r| r.best_fitness).collect();
    let summary = cross_run_stats(config.iterations, &bests);
    let cspr = records.iter().map(|r| r.evaluations).sum::<u64>() as Real / config.runs as Real;
    let mrt_seconds = records.iter().map(|r| r.elapsed_seconds).sum::<f64>() / config.runs as f64;

    // Checkpoint snapshots come from the recorded histories of the same
    // runs — no re-execution.
    let checkpoints = config
        .checkpoints
        .iter()
        .filter(|&&ite| ite >= 1 && ite <= config.iterations)
        .map(|&ite| {
            let at: Vec<Real> = results.iter().map(|r| r.history[ite - 1].best).collect();
            cross_run_stats(ite, &at)
        })
        .collect();

    let mut trace = ConvergenceTrace {
        mean: Vec::with_capacity(config.iterations),
        stdev: Vec::with_capacity(config.iterations),
    };
    for ite in 0..config.iterations {
        let at: Vec<Real> = results.iter().map(|r| r.history[ite].best).collect();
        trace.mean.push(at.iter().sum::<Real>() / at.len() as Real);
        trace.stdev.push(population_stdev(&at));
    }

    Ok((
        RunStatistics {
            algorithm: config.algorithm,
            problem: config.problem.clone(),
            population: config.population,
            iterations: config.iterations,
            mean: summary.mean,
            best: summary.best,
            worst: summary.worst,
            stdev: summary.stdev,
            cspr,
            checkpoints,
            runs: records,
            mrt_seconds,
        },
        trace,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere_config() -> ExperimentConfig {
        ExperimentConfig {
            algorithm: Algorithm::Mpso,
            problem: String::new(),
            backend: Backend::Benchmark("sphere".into()),
            population: 10,
            iterations: 30,
            runs: 3,
            master_seed: 7,
            workers: 1,
            checkpoints: vec![10, 20, 30],
            benchmark_dimension: 4,
            params: AlgorithmParams::default(),
        }
    }

    #[test]
    fn stdev_of_one_two_three() {
        let s = population_stdev(&[1.0, 2.0, 3.0]);
        assert!((s - (2.0f64 / 3.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn single_run_collapses_the_statistics() {
        let mut config = sphere_config();
        config.runs = 1;
        let (stats, _) = run_experiment(&config).unwrap();
        assert_eq!(stats.stdev, 0.0);
        assert_eq!(stats.best, stats.mean);
        assert_eq!(stats.worst, stats.mean);
    }

    #[test]
    fn cspr_is_the_exact_budget_average() {
        let (stats, _) = run_experiment(&sphere_config()).unwrap();
        let total: u64 = stats.runs.iter().map(|r| r.evaluations).sum();
        assert_eq!(stats.cspr, total as Real / stats.runs.len() as Real);
    }

    #[test]
    fn trace_length_and_monotonicity() {
        let config = sphere_config();
        let (_, trace) = run_experiment(&config).unwrap();
        assert_eq!(trace.mean.len(), config.iterations);
        for w in trace.mean.windows(2) {
            assert!(w[1] <= w[0] + 1e-15, "elitist mean must not increase");
        }
    }

    #[test]
    fn worker_count_does_not_change_results() {
        let mut config = sphere_config();
        let (a, ta) = run_experiment(&config).unwrap();
        config.workers = 4;
        let (b, tb) = run_experiment(&config).unwrap();
        assert_eq!(
            a.runs.iter().map(|r| r.best_fitness).collect::<Vec<_>>(),
            b.runs.iter().map(|r| r.best_fitness).collect::<Vec<_>>()
        );
        assert_eq!(ta, tb);
        assert_eq!(a.checkpoints, b.checkpoints);
    }

    #[test]
    fn config_round_trips_through_toml() {
        let config = sphere_config();
        let text = toml::to_string(&config).unwrap();
        let back = ExperimentConfig::from_toml(&text).unwrap();
        assert_eq!(back.algorithm, config.algorithm);
        assert_eq!(back.backend, config.backend);
        assert_eq!(back.checkpoints, config.checkpoints);
    }

    #[test]
    fn unknown_backend_is_a_config_error() {
        assert!("benchmark:ackley".parse::<Backend>().is_err());
        assert!("spice".parse::<Backend>().is_err());
    }
}
