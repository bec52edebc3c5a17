use super::{Candidate, EvaluationBudget, SearchSpace};
use crate::Real;

/// Outcome of one survivability-tested evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub fitness: Real,
    pub feasible: bool,
    /// Failed constraints, each with its signed margin (negative = violated).
    pub violations: Vec<(String, Real)>,
}

impl Evaluation {
    pub fn feasible(fitness: Real) -> Self {
        Self {
            fitness,
            feasible: true,
            violations: Vec::new(),
        }
    }
}

/// Behavioral contract of an optimization problem backend.
///
/// Implementations: the analytic op-amp models, the external-simulator
/// adapter, and the benchmark functions. `evaluate` must be deterministic
/// for a fixed position on the analytic backends.
pub trait Evaluator: Sync {
    /// Bounds the search operates in (derived feasible intervals where the
    /// problem layer can compute them, otherwise the raw variable box).
    fn derived_bounds(&self) -> SearchSpace;

    /// The raw decision-variable box, before any analytic tightening.
    /// Used for uninformed initialization by the standard algorithm variants.
    fn problem_box(&self) -> SearchSpace {
        self.derived_bounds()
    }

    fn dimension(&self) -> usize {
        self.derived_bounds().dimension()
    }

    /// One survivability test: full constraint check plus fitness.
    fn evaluate(&self, position: &[Real]) -> Evaluation;
}

/// An evaluator paired with the run's shared budget counter.
///
/// All evaluation in the optimization loops goes through `test`, so the
/// final counter equals the exact number of survivability tests.
pub struct ProblemHandle<'a> {
    pub evaluator: &'a dyn Evaluator,
    pub budget: &'a EvaluationBudget,
}

impl<'a> ProblemHandle<'a> {
    pub fn new(evaluator: &'a dyn Evaluator, budget: &'a EvaluationBudget) -> Self {
        Self { evaluator, budget }
    }

    pub fn dimension(&self) -> usize {
        self.evaluator.dimension()
    }

    /// Evaluate a position, counting exactly one budget increment.
    pub fn test(&self, position: &[Real]) -> Evaluation {
        self.budget.record_evaluation();
        self.evaluator.evaluate(position)
    }

    /// Evaluate a candidate in place, stamping fitness and feasibility.
    pub fn test_candidate(&self, candidate: &mut Candidate) -> Evaluation {
        let eval = self.test(&candidate.position);
        candidate.fitness = Some(eval.fitness);
        candidate.feasible = eval.feasible;
        eval
    }
}
