//! Particle swarm with linearly decreasing inertia (modified) or constant
//! inertia without survivability retries (standard). Velocities are not
//! clamped; position feasibility is enforced by repair-bounds plus the
//! survivability test.

use super::common::{
    init_population, population_mean, uniform_in, BestTracker, IterationStats, OptimizerResult,
    Variant, STARVATION_MULTIPLIER,
};
use super::kernels::pso_update;
use super::schedules::pso_inertia_schedule;
use super::PsoParams;
use crate::core::{
    clamp_to_nearest_bound, substream, Candidate, CoreError, EvaluationBudget, Evaluator,
    ProblemHandle,
};
use crate::Vector;

const PHASE_UPDATE: u64 = 1;

pub fn run_mpso(
    problem: &dyn Evaluator,
    params: &PsoParams,
    seed: u64,
    variant: Variant,
) -> Result<OptimizerResult, CoreError> {
    params.validate()?;
    let budget = EvaluationBudget::new();
    let handle = ProblemHandle::new(problem, &budget);
    let bounds = problem.derived_bounds();
    let n = params.population;
    let dim = bounds.dimension();

    let mut swarm = init_population(&handle, n, seed, variant, params.max_count)?;
    let mut velocities: Vec<Vector> = vec![vec![0.0; dim]; n];
    let mut pbest: Vec<Candidate> = swarm.clone();
    let mut gbest = BestTracker::new();
    gbest.offer_all(&swarm);

    let mut history = Vec::with_capacity(params.max_ite);
    for ite in 1..=params.max_ite {
        let w = match variant {
            Variant::Modified => {
                pso_inertia_schedule(ite, params.max_ite, params.w_min, params.w_max)?
            }
            Variant::Standard => params.w_max,
        };
        let gbest_position = gbest
            .best()
            .expect("swarm was initialized feasible")
            .position
            .clone();

        for i in 0..n {
            let mut rng = substream(seed, &[PHASE_UPDATE, ite as u64, i as u64]);
            let mut count = 0;
            loop {
                let (vel, raw) = pso_update(
                    &swarm[i].position,
                    &velocities[i],
                    &pbest[i].position,
                    &gbest_position,
                    w,
                    params.c1,
                    params.c2,
                    &mut rng,
                );
                let position = clamp_to_nearest_bound(&raw, &bounds)?;
                let eval = handle.test(&position);
                if eval.feasible || variant == Variant::Standard {
                    velocities[i] = vel;
                    swarm[i] = Candidate {
                        position,
                        fitness: Some(eval.fitness),
                        feasible: eval.feasible,
                        trial: 0,
                    };
                    break;
                }
                count += 1;
                if count == params.max_count {
                    if params.regenerate_on_failure {
                        regenerate_particle(
                            &handle,
                            &bounds,
                            &mut swarm,
                            &mut velocities,
                            &mut pbest,
                            i,
                            params.max_count,
                            &mut rng,
                        )?;
                    }
                    // Otherwise the particle simply keeps its old state.
                    break;
                }
            }
            if swarm[i].feasible && swarm[i].fitness() < pbest[i].fitness() {
                pbest[i] = swarm[i].clone();
            }
            gbest.offer(&swarm[i]);
        }

        history.push(IterationStats {
            best: gbest.best_fitness(),
            mean: population_mean(&swarm),
        });
    }

    Ok(OptimizerResult {
        best: gbest.into_best().expect("swarm was initialized feasible"),
        history,
        evaluations: budget.evaluations(),
        elapsed_seconds: budget.elapsed_seconds(),
    })
}

/// Replace a stalled particle with a fresh one from the generator bounds.
#[allow(clippy::too_many_arguments)]
fn regenerate_particle(
    handle: &ProblemHandle,
    bounds: &crate::core::SearchSpace,
    swarm: &mut [Candidate],
    velocities: &mut [Vector],
    pbest: &mut [Candidate],
    i: usize,
    max_count: u32,
    rng: &mut crate::core::Rng,
) -> Result<(), CoreError> {
    let attempts = (STARVATION_MULTIPLIER * max_count) as usize;
    for _ in 0..attempts {
        let position = uniform_in(bounds, rng);
        let eval = handle.test(&position);
        if eval.feasible {
            swarm[i] = Candidate {
                position,
                fitness: Some(eval.fitness),
                feasible: true,
                trial: 0,
            };
            velocities[i] = vec![0.0; bounds.dimension()];
            if swarm[i].fitness() < pbest[i].fitness() {
                pbest[i] = swarm[i].clone();
            }
            return Ok(());
        }
    }
    Err(CoreError::FeasibilityStarvation { slot: i, attempts })
}
