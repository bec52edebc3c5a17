use super::{ConvergenceTrace, HarnessError, RunStatistics};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
    Table,
}

impl ReportFormat {
    pub fn parse(name: &str) -> Option<Self> {
        Some(match name {
            "csv" => ReportFormat::Csv,
            "json" => ReportFormat::Json,
            "table" => ReportFormat::Table,
            _ => return None,
        })
    }
}

/// Render the convergence trace as CSV: `iteration,mean,stdev`, one line
/// per iteration, 1-based.
pub fn render_trace_csv(trace: &ConvergenceTrace) -> String {
    let mut out = String::from("iteration,mean,stdev\n");
    for (i, (mean, stdev)) in trace.mean.iter().zip(&trace.stdev).enumerate() {
        writeln!(out, "{},{mean},{stdev}", i + 1).unwrap();
    }
    out
}

/// Summary plus checkpoint rows; the final row repeats the full-run stats.
pub fn render_stats_csv(stats: &RunStatistics) -> String {
    let mut out =
        String::from("algorithm,problem,population,iteration,mean,best,worst,stdev,cspr\n");
    let mut rows: Vec<(usize, f64, f64, f64, f64)> = stats
        .checkpoints
        .iter()
        .map(|c| (c.iteration, c.mean, c.best, c.worst, c.stdev))
        .collect();
    if !rows.iter().any(|r| r.0 == stats.iterations) {
        rows.push((
            stats.iterations,
            stats.mean,
            stats.best,
            stats.worst,
            stats.stdev,
        ));
    }
    rows.sort_by_key(|r| r.0);
    for (ite, mean, best, worst, stdev) in rows {
        writeln!(
            out,
            "{},{},{},{ite},{mean},{best},{worst},{stdev},{}",
            stats.algorithm.name(),
            stats.problem,
            stats.population,
            stats.cspr
        )
        .unwrap();
    }
    out
}

/// Fixed-width table in the Mean/Best/Worst/STDEV/MRT/CSPR column order.
/// MRT is deliberately deferred to the timing file so this text is
/// reproducible bit-for-bit; stdev is the population (divide-by-n) kind.
pub fn render_stats_table(stats: &RunStatistics) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "{} on {} (N={}, {} iterations, {} runs; stdev = population)",
        stats.algorithm.name(),
        stats.problem,
        stats.population,
        stats.iterations,
        stats.runs.len()
    )
    .unwrap();
    writeln!(
        out,
        "{:>10} {:>14} {:>14} {:>14} {:>14} {:>10} {:>10}",
        "Iteration", "Mean", "Best", "Worst", "STDEV", "MRT", "CSPR"
    )
    .unwrap();
    let mut rows = stats.checkpoints.clone();
    if !rows.iter().any(|c| c.iteration == stats.iterations) {
        rows.push(super::CheckpointStats {
            iteration: stats.iterations,
            mean: stats.mean,
            best: stats.best,
            worst: stats.worst,
            stdev: stats.stdev,
        });
    }
    rows.sort_by_key(|c| c.iteration);
    for c in rows {
        writeln!(
            out,
            "{:>10} {:>14.6e} {:>14.6e} {:>14.6e} {:>14.6e} {:>10} {:>10}",
            c.iteration, c.mean, c.best, c.worst, c.stdev, "(timing)", stats.cspr
        )
        .unwrap();
    }
    out
}

fn render_timing(stats: &RunStatistics) -> String {
    let mut out = String::new();
    writeln!(out, "mrt_seconds = {:.6}", stats.mrt_seconds).unwrap();
    for r in &stats.runs {
        writeln!(out, "run_{}_seconds = {:.6}", r.run, r.elapsed_seconds).unwrap();
    }
    out
}

/// Write the result files into `out_dir` and return their paths.
///
/// Everything except `timing.txt` is a pure function of the run outcomes,
/// so repeated executions with the same seed produce byte-identical files;
/// the wall-clock numbers are quarantined in `timing.txt`.
pub fn emit_report(
    stats: &RunStatistics,
    trace: &ConvergenceTrace,
    format: ReportFormat,
    out_dir: &Path,
) -> Result<Vec<PathBuf>, HarnessError> {
    fs::create_dir_all(out_dir)?;
    let mut paths = Vec::new();
    let mut write = |name: &str, text: String| -> Result<(), HarnessError> {
        let path = out_dir.join(name);
        fs::write(&path, text)?;
        paths.push(path);
        Ok(())
    };
    match format {
        ReportFormat::Csv => write("stats.csv", render_stats_csv(stats))?,
        ReportFormat::Json => {
            let json = serde_json::to_string_pretty(stats)
                .map_err(|e| HarnessError::Config(e.to_string()))?;
            write("stats.json", json + "\n")?;
        }
        ReportFormat::Table => write("stats.txt", render_stats_table(stats))?,
    }
    write("trace.csv", render_trace_csv(trace))?;
    write("timing.txt", render_timing(stats))?;
    Ok(paths)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::Algorithm;
    use crate::harness::{CheckpointStats, RunRecord};

    fn stats() -> RunStatistics {
        RunStatistics {
            algorithm: Algorithm::Mabco,
            problem: "two_stage_65n".into(),
            population: 20,
            iterations: 300,
            mean: 2.0e-13,
            best: 1.0e-13,
            worst: 3.0e-13,
            stdev: 0.8e-13,
            cspr: 12345.5,
            checkpoints: vec![CheckpointStats {
                iteration: 100,
                mean: 4.0e-13,
                best: 2.0e-13,
                worst: 6.0e-13,
                stdev: 1.0e-13,
            }],
            runs: vec![RunRecord {
                run: 0,
                best_fitness: 1.0e-13,
                feasible: true,
                position: vec![1e-6; 6],
                evaluations: 12345,
                elapsed_seconds: 0.25,
            }],
            mrt_seconds: 0.25,
        }
    }

    fn trace() -> ConvergenceTrace {
        ConvergenceTrace {
            mean: (0..300).map(|i| 1.0 / (i + 1) as f64).collect(),
            stdev: vec![0.1; 300],
        }
    }

    #[test]
    fn trace_csv_has_header_plus_one_line_per_iteration() {
        let text = render_trace_csv(&trace());
        assert_eq!(text.lines().count(), 301);
        assert_eq!(text.lines().next().unwrap(), "iteration,mean,stdev");
    }

    #[test]
    fn emission_is_deterministic() {
        let dir = tempfile::tempdir().unwrap();
        let a = emit_report(&stats(), &trace(), ReportFormat::Csv, &dir.path().join("a")).unwrap();
        let b = emit_report(&stats(), &trace(), ReportFormat::Csv, &dir.path().join("b")).unwrap();
        for (pa, pb) in a.iter().zip(&b) {
            assert_eq!(fs::read(pa).unwrap(), fs::read(pb).unwrap());
        }
    }

    #[test]
    fn json_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let paths = emit_report(&stats(), &trace(), ReportFormat::Json, dir.path()).unwrap();
        let text = fs::read_to_string(&paths[0]).unwrap();
        let back: RunStatistics = serde_json::from_str(&text).unwrap();
        assert_eq!(back.mean, stats().mean);
        assert_eq!(back.checkpoints, stats().checkpoints);
    }

    #[test]
    fn table_mirrors_the_column_order() {
        let text = render_stats_table(&stats());
        let header = text.lines().nth(1).unwrap();
        let cols: Vec<&str> = header.split_whitespace().collect();
        assert_eq!(
            cols,
            ["Iteration", "Mean", "Best", "Worst", "STDEV", "MRT", "CSPR"]
        );
    }
}
