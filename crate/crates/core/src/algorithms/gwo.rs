//! Grey wolf optimizer. The modified variant retries infeasible position
//! updates and parks exhausted agents at the search-space upper corner; the
//! standard variant takes a single clamped update per agent.

use super::common::{
    init_population, population_mean, BestTracker, IterationStats, OptimizerResult, Variant,
};
use super::kernels::gwo_position_update;
use super::schedules::gwo_a_schedule;
use super::GwoParams;
use crate::core::{
    clamp_to_nearest_bound, substream, Candidate, CoreError, EvaluationBudget, Evaluator,
    ProblemHandle,
};

const PHASE_UPDATE: u64 = 1;

pub fn run_mgwo(
    problem: &dyn Evaluator,
    params: &GwoParams,
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

    let mut history = Vec::with_capacity(params.max_ite);
    for ite in 1..=params.max_ite {
        let a: f64 = gwo_a_schedule(ite, params.max_ite)?;

        let [alpha, beta, delta] = leader_positions(&population);

        // Indexed loop: `i` seeds the per-agent stream and names the slot.
        #[allow(clippy::needless_range_loop)]
        for i in 0..n {
            let mut rng = substream(seed, &[PHASE_UPDATE, ite as u64, i as u64]);
            let mut count = 0;
            loop {
                let raw = gwo_position_update(
                    &population[i].position,
                    &alpha,
                    &beta,
                    &delta,
                    a,
                    &mut rng,
                )?;
                let position = clamp_to_nearest_bound(&raw, &bounds)?;
                let eval = handle.test(&position);
                if eval.feasible || variant == Variant::Standard {
                    population[i] = Candidate {
                        position,
                        fitness: Some(eval.fitness),
                        feasible: eval.feasible,
                        trial: 0,
                    };
                    best.offer(&population[i]);
                    break;
                }
                count += 1;
                if count == params.max_count {
                    // Park the agent at the upper corner; it gets pulled back
                    // toward the leaders on its next update.
                    let corner = bounds.upper().to_vec();
                    let eval = handle.test(&corner);
                    population[i] = Candidate {
                        position: corner,
                        fitness: Some(eval.fitness),
                        feasible: eval.feasible,
                        trial: 0,
                    };
                    best.offer(&population[i]);
                    break;
                }
            }
        }

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

/// Positions of the three fittest agents, ties broken by lower index.
fn leader_positions(population: &[Candidate]) -> [Vec<f64>; 3] {
    let mut order: Vec<usize> = (0..population.len()).collect();
    order.sort_by(|&a, &b| {
        population[a]
            .fitness()
            .partial_cmp(&population[b].fitness())
            .unwrap()
    });
    [
        population[order[0]].position.clone(),
        population[order[1]].position.clone(),
        population[order[2]].position.clone(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn leaders_are_three_minima_in_order() {
        let population: Vec<Candidate> = [4.0, 1.0, 3.0, 2.0, 5.0]
            .iter()
            .map(|&f| Candidate {
                position: vec![f],
                fitness: Some(f),
                feasible: true,
                trial: 0,
            })
            .collect();
        let [a, b, d] = leader_positions(&population);
        assert_eq!((a[0], b[0], d[0]), (1.0, 2.0, 3.0));
    }

    #[test]
    fn tie_break_by_lower_index() {
        let population: Vec<Candidate> = [2.0, 1.0, 1.0, 3.0]
            .iter()
            .enumerate()
            .map(|(i, &f)| Candidate {
                position: vec![i as f64],
                fitness: Some(f),
                feasible: true,
                trial: 0,
            })
            .collect();
        let [a, b, d] = leader_positions(&population);
        assert_eq!((a[0], b[0], d[0]), (1.0, 2.0, 0.0));
    }
}
