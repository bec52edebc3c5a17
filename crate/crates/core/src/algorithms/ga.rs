//! Real-coded genetic algorithm with pooled elitist survival. The modified
//! variant mutates inside a shrinking window around each gene; the standard
//! variant mutates over the full problem box.

use super::common::{
    init_population, population_mean, BestTracker, IterationStats, OptimizerResult, Variant,
    STARVATION_MULTIPLIER,
};
use super::kernels::{ga_mutation_bounds, single_point_crossover};
use super::schedules::ga_alpha_schedule;
use super::GaParams;
use crate::core::{
    substream, Candidate, CoreError, EvaluationBudget, Evaluator, ProblemHandle, Rng as Stream,
    SearchSpace,
};
use crate::{Real, Vector};
use rand::seq::index::sample;
use rand::Rng;

const PHASE_BREED: u64 = 1;

pub fn run_mga(
    problem: &dyn Evaluator,
    params: &GaParams,
    seed: u64,
    variant: Variant,
) -> Result<OptimizerResult, CoreError> {
    params.validate()?;
    let budget = EvaluationBudget::new();
    let handle = ProblemHandle::new(problem, &budget);
    let bounds = problem.derived_bounds();
    let n = params.population;

    let mut population = init_population(&handle, n, seed, variant, params.max_count)?;
    let mut best = BestTracker::new();
    best.offer_all(&population);

    let mut history = Vec::with_capacity(params.gen_max);
    for gen in 1..=params.gen_max {
        let alpha = match variant {
            Variant::Modified => Some(ga_alpha_schedule(
                gen,
                params.gen_max,
                params.alpha_min,
                params.alpha_max,
            )?),
            Variant::Standard => None,
        };

        let mut pool = population.clone();
        for i in 0..n {
            let mut rng = substream(seed, &[PHASE_BREED, gen as u64, i as u64]);

            let crossed = breed_crossover(&handle, &population, params.max_count, i, &mut rng)?;
            let crossed_mutated = breed_mutant(
                &handle,
                &bounds,
                &crossed.position,
                alpha,
                params.max_count,
                i,
                &mut rng,
            )?;
            let parent_idx = rng.gen_range(0..n);
            let parent_mutated = breed_mutant(
                &handle,
                &bounds,
                &population[parent_idx].position.clone(),
                alpha,
                params.max_count,
                i,
                &mut rng,
            )?;
            pool.push(crossed);
            pool.push(crossed_mutated);
            pool.push(parent_mutated);
        }

        // Fittest N of the 4N pool survive; stable sort keeps lower pool
        // index on ties.
        pool.sort_by(|a, b| a.fitness().partial_cmp(&b.fitness()).unwrap());
        pool.truncate(n);
        population = pool;

        best.offer_all(&population);
        history.push(IterationStats {
            best: best.best_fitness(),
            mean: population_mean(&population),
        });
    }

    Ok(OptimizerResult {
        best: best
            .into_best()
            .expect("population was initialized feasible"),
        history,
        evaluations: budget.evaluations(),
        elapsed_seconds: budget.elapsed_seconds(),
    })
}

fn breed_crossover(
    handle: &ProblemHandle,
    population: &[Candidate],
    max_count: u32,
    slot: usize,
    rng: &mut Stream,
) -> Result<Candidate, CoreError> {
    let n = population.len();
    let dim = population[0].position.len();
    let attempts = (STARVATION_MULTIPLIER * max_count) as usize;
    for _ in 0..attempts {
        let p1 = rng.gen_range(0..n);
        let mut p2 = rng.gen_range(0..n - 1);
        if p2 >= p1 {
            p2 += 1;
        }
        let cut = if dim < 2 { 1 } else { rng.gen_range(1..dim) };
        let child = single_point_crossover(&population[p1].position, &population[p2].position, cut);
        let eval = handle.test(&child);
        if eval.feasible {
            return Ok(Candidate {
                position: child,
                fitness: Some(eval.fitness),
                feasible: true,
                trial: 0,
            });
        }
    }
    Err(CoreError::FeasibilityStarvation { slot, attempts })
}

fn breed_mutant(
    handle: &ProblemHandle,
    bounds: &SearchSpace,
    base: &[Real],
    alpha: Option<Real>,
    max_count: u32,
    slot: usize,
    rng: &mut Stream,
) -> Result<Candidate, CoreError> {
    let dim = base.len();
    let attempts = (STARVATION_MULTIPLIER * max_count) as usize;
    for _ in 0..attempts {
        let mutation_count = rng.gen_range(1..=dim);
        let genes = sample(rng, dim, mutation_count);
        let mut child: Vector = base.to_vec();
        for g in genes {
            let (box_lo, box_hi) = bounds.interval(g);
            let (lo, hi) = match alpha {
                Some(a) => {
                    let (upper, lower) = ga_mutation_bounds(base[g], a, box_hi, box_lo);
                    // The multiplicative window inverts for negative genes;
                    // sample the ordered interval either way.
                    if lower <= upper {
                        (lower, upper)
                    } else {
                        (upper, lower)
                    }
                }
                None => (box_lo, box_hi),
            };
            child[g] = if lo == hi { lo } else { rng.gen_range(lo..=hi) };
        }
        let eval = handle.test(&child);
        if eval.feasible {
            return Ok(Candidate {
                position: child,
                fitness: Some(eval.fitness),
                feasible: true,
                trial: 0,
            });
        }
    }
    Err(CoreError::FeasibilityStarvation { slot, attempts })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pool_survivors_are_the_n_smallest() {
        // Selection step in isolation: 4N pool with known fitnesses.
        let mut pool: Vec<Candidate> = (0..8)
            .map(|i| Candidate {
                position: vec![i as f64],
                fitness: Some([5.0, 1.0, 7.0, 3.0, 0.5, 9.0, 2.0, 4.0][i]),
                feasible: true,
                trial: 0,
            })
            .collect();
        pool.sort_by(|a, b| a.fitness().partial_cmp(&b.fitness()).unwrap());
        pool.truncate(2);
        assert_eq!(pool[0].fitness(), 0.5);
        assert_eq!(pool[1].fitness(), 1.0);
    }
}
