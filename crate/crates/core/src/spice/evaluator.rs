use super::{emit_netlist, parse_measurements, run_simulation, NetlistTemplate, SimulatorConfig};
use crate::circuit::{
    derive_bounds, problem_box, survivability_test, CircuitError, Metric, Objective, ProblemSpec,
    TechnologyCard,
};
use crate::core::EvaluationBudget;
use crate::{Evaluation, Evaluator, Real, SearchSpace};

/// Sizing evaluator backed by the external simulator. Bounds still come
/// from the analytic derivation; only the performance numbers move to the
/// simulator. One evaluation = one subprocess run.
pub struct SimulatorEvaluator {
    spec: ProblemSpec,
    tech: TechnologyCard,
    template: NetlistTemplate,
    config: SimulatorConfig,
    derived: SearchSpace,
    raw: SearchSpace,
    /// Adapter-side launch counter, independent of the optimizer budget.
    launches: EvaluationBudget,
}

impl SimulatorEvaluator {
    pub fn new(
        spec: ProblemSpec,
        tech: TechnologyCard,
        config: SimulatorConfig,
    ) -> Result<Self, CircuitError> {
        let derived = derive_bounds(&spec, &tech)?.space()?;
        let raw = problem_box(&spec, &tech)?;
        let template = NetlistTemplate::builtin(spec.topology);
        Ok(Self {
            spec,
            tech,
            template,
            config,
            derived,
            raw,
            launches: EvaluationBudget::new(),
        })
    }

    pub fn launches(&self) -> u64 {
        self.launches.evaluations()
    }
}

impl Evaluator for SimulatorEvaluator {
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
        let failed = |reason: String| Evaluation {
            fitness: Real::INFINITY,
            feasible: false,
            violations: vec![(reason, Real::NEG_INFINITY)],
        };
        let netlist = match emit_netlist(
            position,
            &self.template,
            &self.spec,
            &self.tech,
            &self.config.model_card,
        ) {
            Ok(text) => text,
            Err(e) => return failed(e.to_string()),
        };
        let raw = match run_simulation(&netlist, &self.config, &self.launches) {
            Ok(raw) => raw,
            Err(e) => return failed(e.to_string()),
        };
        let report = match parse_measurements(&raw) {
            Ok(report) => report,
            Err(e) => return failed(e.to_string()),
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
