use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Instant;

/// Shared evaluation counter plus the wall-clock anchor of a run.
///
/// The counter backs the simulations-per-run statistic; it is the single
/// mutable object shared between workers.
#[derive(Debug)]
pub struct EvaluationBudget {
    evaluations: AtomicU64,
    wall_start: Instant,
}

impl EvaluationBudget {
    pub fn new() -> Self {
        Self {
            evaluations: AtomicU64::new(0),
            wall_start: Instant::now(),
        }
    }

    /// Count one evaluation.
    pub fn record_evaluation(&self) {
        self.evaluations.fetch_add(1, Ordering::Relaxed);
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations.load(Ordering::Relaxed)
    }

    pub fn elapsed_seconds(&self) -> f64 {
        self.wall_start.elapsed().as_secs_f64()
    }
}

impl Default for EvaluationBudget {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn increments_by_one() {
        let b = EvaluationBudget::new();
        assert_eq!(b.evaluations(), 0);
        b.record_evaluation();
        assert_eq!(b.evaluations(), 1);
    }

    #[test]
    fn two_hundred_calls_from_zero() {
        let b = EvaluationBudget::new();
        for _ in 0..200 {
            b.record_evaluation();
        }
        assert_eq!(b.evaluations(), 200);
    }
}
