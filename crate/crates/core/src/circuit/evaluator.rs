//! Evaluator backend built on the closed-form op-amp models.

use super::{
    derive_bounds, evaluate_folded_cascode, evaluate_two_stage, problem_box, survivability_test,
    CircuitError, Metric, Objective, ProblemSpec, TechnologyCard, Topology,
};
use crate::{Evaluation, Evaluator, Real, SearchSpace};

/// Deterministic sizing evaluator: runs the analytic performance model,
/// applies the survivability test, and reports the objective as fitness.
/// Bounds are derived once at construction.
pub struct AnalyticEvaluator {
    spec: ProblemSpec,
    tech: TechnologyCard,
    derived: SearchSpace,
    raw: SearchSpace,
}

impl AnalyticEvaluator {
    pub fn new(spec: ProblemSpec, tech: TechnologyCard) -> Result<Self, CircuitError> {
        let derived = derive_bounds(&spec, &tech)?.space()?;
        let raw = problem_box(&spec, &tech)?;
        Ok(Self {
            spec,
            tech,
            derived,
            raw,
        })
    }

    pub fn preset(name: &str) -> Result<Self, CircuitError> {
        let (spec, tech) = ProblemSpec::preset(name)
            .ok_or_else(|| CircuitError::BadProblem(format!("unknown preset {name}")))?;
        Self::new(spec, tech)
    }

    pub fn spec(&self) -> &ProblemSpec {
        &self.spec
    }

    pub fn tech(&self) -> &TechnologyCard {
        &self.tech
    }

    /// Full performance report for a position, for result tables.
    pub fn report(&self, position: &[Real]) -> Result<super::PerformanceReport, CircuitError> {
        match self.spec.topology {
            Topology::TwoStageMiller => evaluate_two_stage(position, &self.spec, &self.tech),
            Topology::FoldedCascode => evaluate_folded_cascode(position, &self.spec, &self.tech),
        }
    }
}

impl Evaluator for AnalyticEvaluator {
    fn derived_bounds(&self) -> SearchSpace {
        self.derived.clone()
    }

    fn problem_box(&self) -> SearchSpace {
        self.raw.clone()
    }

    fn dimension(&self) -> usize {
        self.spec.topology.dimension()
    }

    fn evaluate(&self, position: &[Real]) -> Evaluation {
        let report = match self.report(position) {
            Ok(report) => report,
            // Malformed positions (negative width from an unclamped move)
            // count as failed survivability, not a crash.
            Err(err) => {
                return Evaluation {
                    fitness: Real::INFINITY,
                    feasible: false,
                    violations: vec![(err.to_string(), Real::NEG_INFINITY)],
                }
            }
        };
        let (pass, violations) = survivability_test(&report, &self.spec);
        let fitness = match self.spec.objective {
            Objective::Area => report.metric(Metric::Area),
            Objective::Noise => report.metric(Metric::Noise),
            Objective::Power => report.metric(Metric::Power),
        };
        Evaluation {
            fitness,
            feasible: pass,
            violations,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::generate_candidate_pgf;
    use crate::core::spawn_rng_stream;

    #[test]
    fn evaluator_constructs_for_all_presets() {
        for name in ProblemSpec::preset_names() {
            let ev = AnalyticEvaluator::preset(name).unwrap();
            assert_eq!(ev.dimension(), ev.spec().topology.dimension());
            assert_eq!(ev.derived_bounds().dimension(), ev.dimension());
        }
    }

    #[test]
    fn fitness_is_the_area_objective() {
        let ev = AnalyticEvaluator::preset("two_stage_65n").unwrap();
        let bounds = derive_bounds(ev.spec(), ev.tech()).unwrap();
        let mut rng = spawn_rng_stream(3, 0);
        let c = generate_candidate_pgf(&bounds, &mut rng);
        let eval = ev.evaluate(&c.position);
        let report = ev.report(&c.position).unwrap();
        assert_eq!(eval.fitness, report.area_m2);
    }

    #[test]
    fn malformed_position_is_infeasible_not_a_panic() {
        let ev = AnalyticEvaluator::preset("two_stage_65n").unwrap();
        let eval = ev.evaluate(&[-1.0; 6]);
        assert!(!eval.feasible);
        assert!(eval.fitness.is_infinite());
    }

    #[test]
    fn derived_bounds_admit_some_survivors() {
        // The tightened intervals must actually contain feasible designs;
        // this is what makes the informed generator worth having.
        for name in ["two_stage_65n", "folded_cascode_180n"] {
            let ev = AnalyticEvaluator::preset(name).unwrap();
            let bounds = derive_bounds(ev.spec(), ev.tech()).unwrap();
            let mut rng = spawn_rng_stream(17, 0);
            let survivors = (0..1000)
                .filter(|_| {
                    let c = generate_candidate_pgf(&bounds, &mut rng);
                    ev.evaluate(&c.position).feasible
                })
                .count();
            assert!(survivors > 0, "no survivors among PGF draws for {name}");
        }
    }
}
