//! Op-amp sizing problem layer: technology cards, first-order analytic
//! performance models, feasible-bound derivation, the population generator,
//! and the survivability test.

pub mod bounds;
pub mod device;
mod evaluator;
mod folded;
mod problem;
mod report;
mod tech;
mod two_stage;

pub use bounds::{
    derive_bounds, generate_candidate_pgf, problem_box, repair_bounds, repair_into_space,
    DerivedBounds,
};
pub use device::{
    drain_current, gds_at_current, gm_at_current, output_conductance, overdrive, transconductance,
};
pub use evaluator::AnalyticEvaluator;
pub use folded::evaluate_folded_cascode;
pub use problem::{Constraint, Direction, Metric, Objective, ProblemFile, ProblemSpec, Topology};
pub use report::{area_fitness, survivability_test, PerformanceReport};
pub use tech::TechnologyCard;
pub use two_stage::evaluate_two_stage;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CircuitError {
    #[error("position has {got} variables, topology needs {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("non-positive decision variable: {name} = {value}")]
    NonPositiveVariable { name: &'static str, value: f64 },
    #[error("width/length vectors differ in length: {widths} vs {lengths}")]
    AreaLengthMismatch { widths: usize, lengths: usize },
    #[error(
        "infeasible spec: empty bound interval for {variable} \
         ({lower:.3e} >= {upper:.3e}; {constraint_low} vs {constraint_high})"
    )]
    InfeasibleSpec {
        variable: &'static str,
        lower: f64,
        upper: f64,
        constraint_low: &'static str,
        constraint_high: &'static str,
    },
    #[error("technology card rejected: {0}")]
    BadTechnology(String),
    #[error("problem spec rejected: {0}")]
    BadProblem(String),
    #[error("config parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Core(#[from] crate::core::CoreError),
}
