use super::{run_experiment, ExperimentConfig, HarnessError};
use crate::harness::population_stdev;
use crate::Real;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;

/// Paired-seed comparison between a modified algorithm and its standard
/// baseline under identical protocol.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub modified: String,
    pub standard: String,
    pub problem: String,
    pub mean_modified: Real,
    pub mean_standard: Real,
    /// mean_modified - mean_standard; negative favors the modified variant.
    pub mean_difference: Real,
    pub stdev_modified: Real,
    pub stdev_standard: Real,
    /// Seeds where the modified run's best was strictly lower / higher.
    pub wins_modified: usize,
    pub wins_standard: usize,
    pub ties: usize,
    pub per_seed_difference: Vec<Real>,
}

impl ComparisonReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "{} vs {} on {} ({} paired seeds)",
            self.modified,
            self.standard,
            self.problem,
            self.per_seed_difference.len()
        )
        .unwrap();
        writeln!(
            out,
            "mean: {} vs {} (difference {})",
            self.mean_modified, self.mean_standard, self.mean_difference
        )
        .unwrap();
        writeln!(
            out,
            "stdev: {} vs {}",
            self.stdev_modified, self.stdev_standard
        )
        .unwrap();
        writeln!(
            out,
            "wins: {} modified, {} standard, {} ties",
            self.wins_modified, self.wins_standard, self.ties
        )
        .unwrap();
        out
    }
}

/// Run both configurations on the same seeds and pair the results.
/// The two configs must agree on everything except the algorithm.
pub fn compare_variants(
    modified: &ExperimentConfig,
    standard: &ExperimentConfig,
) -> Result<ComparisonReport, HarnessError> {
    let same_protocol = modified.problem == standard.problem
        && modified.backend == standard.backend
        && modified.population == standard.population
        && modified.iterations == standard.iterations
        && modified.runs == standard.runs
        && modified.master_seed == standard.master_seed
        && modified.benchmark_dimension == standard.benchmark_dimension;
    if !same_protocol {
        return Err(HarnessError::Config(
            "comparison configs must share problem, backend, budget and seeds".into(),
        ));
    }
    let (m_stats, _) = run_experiment(modified)?;
    let (s_stats, _) = run_experiment(standard)?;

    let m: Vec<Real> = m_stats.runs.iter().map(|r| r.best_fitness).collect();
    let s: Vec<Real> = s_stats.runs.iter().map(|r| r.best_fitness).collect();
    let per_seed_difference: Vec<Real> = m.iter().zip(&s).map(|(a, b)| a - b).collect();
    let wins_modified = per_seed_difference.iter().filter(|d| **d < 0.0).count();
    let wins_standard = per_seed_difference.iter().filter(|d| **d > 0.0).count();
    let ties = per_seed_difference.len() - wins_modified - wins_standard;

    Ok(ComparisonReport {
        modified: modified.algorithm.name().into(),
        standard: standard.algorithm.name().into(),
        problem: modified.problem.clone(),
        mean_modified: m_stats.mean,
        mean_standard: s_stats.mean,
        mean_difference: m_stats.mean - s_stats.mean,
        stdev_modified: population_stdev(&m),
        stdev_standard: population_stdev(&s),
        wins_modified,
        wins_standard,
        ties,
        per_seed_difference,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::{Algorithm, AlgorithmParams};
    use crate::harness::Backend;

    fn config(algorithm: Algorithm) -> ExperimentConfig {
        ExperimentConfig {
            algorithm,
            problem: String::new(),
            backend: Backend::Benchmark("sphere".into()),
            population: 10,
            iterations: 20,
            runs: 4,
            master_seed: 11,
            workers: 1,
            checkpoints: vec![],
            benchmark_dimension: 3,
            params: AlgorithmParams::default(),
        }
    }

    #[test]
    fn self_comparison_is_a_wash() {
        let report = compare_variants(&config(Algorithm::Mpso), &config(Algorithm::Mpso)).unwrap();
        assert_eq!(report.mean_difference, 0.0);
        assert_eq!(report.wins_modified, 0);
        assert_eq!(report.wins_standard, 0);
        assert_eq!(report.ties, 4);
    }

    #[test]
    fn mismatched_protocols_are_rejected() {
        let a = config(Algorithm::Mpso);
        let mut b = config(Algorithm::Spso);
        b.master_seed = 12;
        assert!(compare_variants(&a, &b).is_err());
    }
}
