//! Constrained evolutionary optimization for analog circuit sizing.
//!
//! Four population-based algorithms (modified ABC, GA, GWO, and PSO, plus
//! their standard baselines) search transistor-width/bias-current spaces
//! against either analytic first-order op-amp models, an external
//! Berkeley-style circuit simulator, or desk-scale benchmark functions.
//! Candidate initialization is informed by analytically derived feasible
//! bounds, every update is clamped back into those bounds, and every
//! accepted candidate must pass a full constraint check.

// Negated comparisons like `!(x > 0.0)` are deliberate throughout the
// validation paths: unlike `x <= 0.0`, they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algorithms;
pub mod circuit;
pub mod core;
pub mod harness;
pub mod num;
pub mod spice;

/// Concrete scalar used by the problem layers and orchestration loops.
pub type Real = f64;

/// A position in decision-variable space.
pub type Vector = Vec<Real>;

pub use crate::core::{
    clamp_to_nearest_bound, spawn_rng_stream, substream, Candidate, Evaluation, EvaluationBudget,
    Evaluator, ProblemHandle, SearchSpace,
};
pub use crate::num::Scalar;
