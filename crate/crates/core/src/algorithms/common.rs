use crate::core::{substream, Candidate, CoreError, ProblemHandle, SearchSpace};
use crate::{Real, Vector};
use rand::Rng;

/// Modified (paper) vs standard baseline behavior of a runner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Modified,
    Standard,
}

/// Per-iteration best-so-far and population-mean fitness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationStats {
    pub best: Real,
    pub mean: Real,
}

/// Outcome of one optimization run.
#[derive(Debug, Clone)]
pub struct OptimizerResult {
    pub best: Candidate,
    pub history: Vec<IterationStats>,
    pub evaluations: u64,
    pub elapsed_seconds: f64,
}

/// Retry multiplier before an update/offspring loop gives up and the run
/// aborts with a starvation diagnostic.
pub const STARVATION_MULTIPLIER: u32 = 50;

pub fn uniform_in<R: Rng>(space: &SearchSpace, rng: &mut R) -> Vector {
    (0..space.dimension())
        .map(|d| {
            let (lo, hi) = space.interval(d);
            if lo == hi {
                lo
            } else {
                rng.gen_range(lo..=hi)
            }
        })
        .collect()
}

/// Build the initial population: draw from the derived bounds (modified
/// variants) or the raw problem box (standard variants), keeping only
/// candidates that pass the survivability test.
pub fn init_population(
    problem: &ProblemHandle,
    n: usize,
    seed: u64,
    variant: Variant,
    max_count: u32,
) -> Result<Vec<Candidate>, CoreError> {
    let space = match variant {
        Variant::Modified => problem.evaluator.derived_bounds(),
        Variant::Standard => problem.evaluator.problem_box(),
    };
    let attempts_cap = (STARVATION_MULTIPLIER * max_count).max(1000) as usize;
    let mut population = Vec::with_capacity(n);
    for slot in 0..n {
        let mut rng = substream(seed, &[0, 0, slot as u64]);
        let mut found = None;
        for _ in 0..attempts_cap {
            let mut candidate = Candidate::unevaluated(uniform_in(&space, &mut rng));
            let eval = problem.test_candidate(&mut candidate);
            if eval.feasible {
                found = Some(candidate);
                break;
            }
        }
        population.push(found.ok_or(CoreError::FeasibilityStarvation {
            slot,
            attempts: attempts_cap,
        })?);
    }
    Ok(population)
}

/// Elitist best-so-far memory over feasible candidates only.
#[derive(Debug, Clone)]
pub struct BestTracker {
    best: Option<Candidate>,
}

impl BestTracker {
    pub fn new() -> Self {
        Self { best: None }
    }

    /// Offer a feasible, evaluated candidate; ties keep the incumbent.
    pub fn offer(&mut self, candidate: &Candidate) {
        if !candidate.feasible {
            return;
        }
        let better = match &self.best {
            None => true,
            Some(b) => candidate.fitness() < b.fitness(),
        };
        if better {
            self.best = Some(candidate.clone());
        }
    }

    pub fn offer_all(&mut self, candidates: &[Candidate]) {
        for c in candidates {
            self.offer(c);
        }
    }

    pub fn best(&self) -> Option<&Candidate> {
        self.best.as_ref()
    }

    pub fn best_fitness(&self) -> Real {
        self.best
            .as_ref()
            .map(|c| c.fitness())
            .unwrap_or(Real::INFINITY)
    }

    pub fn into_best(self) -> Option<Candidate> {
        self.best
    }
}

pub fn population_mean(population: &[Candidate]) -> Real {
    population.iter().map(|c| c.fitness()).sum::<Real>() / population.len() as Real
}

/// Index of the population minimum; ties broken by lowest index.
pub fn best_index(population: &[Candidate]) -> usize {
    let mut idx = 0;
    for (i, c) in population.iter().enumerate().skip(1) {
        if c.fitness() < population[idx].fitness() {
            idx = i;
        }
    }
    idx
}
