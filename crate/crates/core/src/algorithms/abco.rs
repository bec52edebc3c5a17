//! Artificial bee colony with scheduled limit/dimension parameters and a
//! crossover-based scout phase (modified variant), or constant limit,
//! single-dimension updates, and random scout replacement (standard).

use super::common::{
    best_index, init_population, population_mean, uniform_in, BestTracker, IterationStats,
    OptimizerResult, Variant, STARVATION_MULTIPLIER,
};
use super::kernels::{abco_neighbor, single_point_crossover};
use super::schedules::{abco_dim_schedule, abco_limit_schedule};
use super::AbcoParams;
use crate::core::{
    clamp_to_nearest_bound, substream, Candidate, CoreError, EvaluationBudget, Evaluator,
    ProblemHandle, Rng as Stream,
};
use crate::Real;
use rand::seq::index::sample;
use rand::Rng;

const PHASE_EMPLOYED: u64 = 1;
const PHASE_ONLOOKER: u64 = 2;
const PHASE_SCOUT: u64 = 3;

pub fn run_mabco(
    problem: &dyn Evaluator,
    params: &AbcoParams,
    seed: u64,
    variant: Variant,
) -> Result<OptimizerResult, CoreError> {
    params.validate()?;
    let budget = EvaluationBudget::new();
    let handle = ProblemHandle::new(problem, &budget);
    let bounds = problem.derived_bounds();
    let n = params.population;
    let dim = bounds.dimension();

    let mut population = init_population(&handle, n, seed, variant, params.max_count)?;
    let mut best = BestTracker::new();
    best.offer_all(&population);

    let mut history = Vec::with_capacity(params.max_ite);
    for ite in 1..=params.max_ite {
        let (limit, dims_count) = match variant {
            Variant::Modified => (
                abco_limit_schedule(ite, params.max_ite, params.limit_min, params.limit_max)?,
                abco_dim_schedule(ite, params.max_ite, dim)?,
            ),
            Variant::Standard => (params.limit_max, 1),
        };

        // Employed bee phase: one neighborhood move per food source.
        for i in 0..n {
            let mut rng = substream(seed, &[PHASE_EMPLOYED, ite as u64, i as u64]);
            let improved = greedy_neighbor_move(
                &handle,
                &bounds,
                &mut population,
                i,
                dims_count,
                params.max_count,
                &mut rng,
            )?;
            if improved {
                best.offer(&population[i]);
            } else {
                population[i].trial += 1;
            }
        }

        // Onlooker bee phase: roulette-selected sources get another move.
        // Failures here do not advance the trial counter.
        for o in 0..n {
            let mut rng = substream(seed, &[PHASE_ONLOOKER, ite as u64, o as u64]);
            let s = roulette_select(&population, &mut rng);
            let improved = greedy_neighbor_move(
                &handle,
                &bounds,
                &mut population,
                s,
                dims_count,
                params.max_count,
                &mut rng,
            )?;
            if improved {
                population[s].trial = 0;
                best.offer(&population[s]);
            }
        }

        // Scout bee phase: exhausted sources are rebuilt.
        for i in 0..n {
            if population[i].trial < limit {
                continue;
            }
            let mut rng = substream(seed, &[PHASE_SCOUT, ite as u64, i as u64]);
            match variant {
                Variant::Modified => scout_crossover_replacement(
                    &handle,
                    &mut population,
                    i,
                    &best,
                    params.max_count,
                    &mut rng,
                )?,
                Variant::Standard => scout_random_replacement(
                    &handle,
                    &bounds,
                    &mut population,
                    i,
                    params.max_count,
                    &mut rng,
                )?,
            }
            best.offer(&population[i]);
        }

        // Memorize the best food source.
        best.offer(&population[best_index(&population)]);
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

/// One employed/onlooker move with survivability retries. Returns whether
/// the source was replaced by a strictly better feasible neighbor.
fn greedy_neighbor_move(
    handle: &ProblemHandle,
    bounds: &crate::core::SearchSpace,
    population: &mut [Candidate],
    i: usize,
    dims_count: usize,
    max_count: u32,
    rng: &mut Stream,
) -> Result<bool, CoreError> {
    let n = population.len();
    let dim = bounds.dimension();
    let mut count = 0;
    loop {
        // Fresh partner and dimension set per retry.
        let mut k = rng.gen_range(0..n - 1);
        if k >= i {
            k += 1;
        }
        let mut dims: Vec<usize> = sample(rng, dim, dims_count.min(dim)).into_vec();
        dims.sort_unstable();
        let raw = abco_neighbor(&population[i].position, &population[k].position, &dims, rng)?;
        let position = clamp_to_nearest_bound(&raw, bounds)?;
        let eval = handle.test(&position);
        if eval.feasible {
            if eval.fitness < population[i].fitness() {
                population[i] = Candidate {
                    position,
                    fitness: Some(eval.fitness),
                    feasible: true,
                    trial: 0,
                };
                return Ok(true);
            }
            return Ok(false);
        }
        count += 1;
        if count == max_count {
            // Retain the old food source.
            return Ok(false);
        }
    }
}

/// Roulette-wheel selection for minimization: weight 1/(1 + f) after
/// shifting fitness to be non-negative.
fn roulette_select(population: &[Candidate], rng: &mut Stream) -> usize {
    let f_min = population
        .iter()
        .map(|c| c.fitness())
        .fold(Real::INFINITY, Real::min);
    let shift = if f_min < 0.0 { -f_min } else { 0.0 };
    let weights: Vec<Real> = population
        .iter()
        .map(|c| 1.0 / (1.0 + c.fitness() + shift))
        .collect();
    let total: Real = weights.iter().sum();
    let mut u = rng.gen_range(0.0..total);
    for (i, w) in weights.iter().enumerate() {
        if u < *w {
            return i;
        }
        u -= w;
    }
    population.len() - 1
}

fn random_cut(dim: usize, rng: &mut Stream) -> usize {
    if dim < 2 {
        1
    } else {
        rng.gen_range(1..dim)
    }
}

/// Modified scout: breed one child from the exhausted source and the best
/// solution so far, another from two random sources, and keep the better
/// feasible child.
fn scout_crossover_replacement(
    handle: &ProblemHandle,
    population: &mut [Candidate],
    i: usize,
    best: &BestTracker,
    max_count: u32,
    rng: &mut Stream,
) -> Result<(), CoreError> {
    let n = population.len();
    let dim = population[i].position.len();
    let best_position = best
        .best()
        .expect("scout phase runs after feasible initialization")
        .position
        .clone();
    let attempts = (STARVATION_MULTIPLIER * max_count) as usize;
    for _ in 0..attempts {
        let child_a = single_point_crossover(
            &population[i].position,
            &best_position,
            random_cut(dim, rng),
        );
        let r1 = rng.gen_range(0..n);
        let mut r2 = rng.gen_range(0..n - 1);
        if r2 >= r1 {
            r2 += 1;
        }
        let child_b = single_point_crossover(
            &population[r1].position,
            &population[r2].position,
            random_cut(dim, rng),
        );
        let eval_a = handle.test(&child_a);
        let eval_b = handle.test(&child_b);
        let winner = match (eval_a.feasible, eval_b.feasible) {
            (true, true) => {
                if eval_a.fitness <= eval_b.fitness {
                    Some((child_a, eval_a))
                } else {
                    Some((child_b, eval_b))
                }
            }
            (true, false) => Some((child_a, eval_a)),
            (false, true) => Some((child_b, eval_b)),
            (false, false) => None,
        };
        if let Some((position, eval)) = winner {
            population[i] = Candidate {
                position,
                fitness: Some(eval.fitness),
                feasible: true,
                trial: 0,
            };
            return Ok(());
        }
    }
    Err(CoreError::FeasibilityStarvation { slot: i, attempts })
}

/// Standard scout: replace the exhausted source with a uniform random point.
fn scout_random_replacement(
    handle: &ProblemHandle,
    bounds: &crate::core::SearchSpace,
    population: &mut [Candidate],
    i: usize,
    max_count: u32,
    rng: &mut Stream,
) -> Result<(), CoreError> {
    let attempts = (STARVATION_MULTIPLIER * max_count) as usize;
    for _ in 0..attempts {
        let position = uniform_in(bounds, rng);
        let eval = handle.test(&position);
        if eval.feasible {
            population[i] = Candidate {
                position,
                fitness: Some(eval.fitness),
                feasible: true,
                trial: 0,
            };
            return Ok(());
        }
    }
    Err(CoreError::FeasibilityStarvation { slot: i, attempts })
}
