//! Problem-independent foundations: search space, candidates, the evaluator
//! contract, budget accounting, and deterministic RNG streams.

mod budget;
mod eval;
mod rng;
mod space;

pub use budget::EvaluationBudget;
pub use eval::{Evaluation, Evaluator, ProblemHandle};
pub use rng::{spawn_rng_stream, substream, Rng};
pub use space::{clamp_to_nearest_bound, Candidate, SearchSpace};

use thiserror::Error;

/// Errors raised by the foundation types and the optimization loops.
#[derive(Debug, Error)]
pub enum CoreError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid bounds at dimension {dim}: lower {lower} must be < upper {upper}")]
    InvalidBounds { dim: usize, lower: f64, upper: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("could not build a feasible candidate for slot {slot} after {attempts} attempts")]
    FeasibilityStarvation { slot: usize, attempts: usize },
}
