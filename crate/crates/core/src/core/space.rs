use super::CoreError;
use crate::num::Scalar;

/// Box-constrained continuous search space.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchSpace<F = f64> {
    lower: Vec<F>,
    upper: Vec<F>,
}

impl<F: Scalar> SearchSpace<F> {
    pub fn new(lower: Vec<F>, upper: Vec<F>) -> Result<Self, CoreError> {
        if lower.len() != upper.len() || lower.is_empty() {
            return Err(CoreError::DimensionMismatch {
                expected: lower.len().max(1),
                got: upper.len(),
            });
        }
        for (d, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo < hi) {
                return Err(CoreError::InvalidBounds {
                    dim: d,
                    lower: lo.to_f64().unwrap_or(f64::NAN),
                    upper: hi.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(Self { lower, upper })
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[F] {
        &self.lower
    }

    pub fn upper(&self) -> &[F] {
        &self.upper
    }

    pub fn interval(&self, d: usize) -> (F, F) {
        (self.lower[d], self.upper[d])
    }

    pub fn contains(&self, position: &[F]) -> bool {
        position.len() == self.dimension()
            && position
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&x, (&lo, &hi))| x >= lo && x <= hi)
    }
}

/// Clamp each component to the nearest bound of the closed box.
pub fn clamp_to_nearest_bound<F: Scalar>(
    position: &[F],
    bounds: &SearchSpace<F>,
) -> Result<Vec<F>, CoreError> {
    if position.len() != bounds.dimension() {
        return Err(CoreError::DimensionMismatch {
            expected: bounds.dimension(),
            got: position.len(),
        });
    }
    Ok(position
        .iter()
        .zip(bounds.lower().iter().zip(bounds.upper()))
        .map(|(&x, (&lo, &hi))| {
            if x < lo {
                lo
            } else if x > hi {
                hi
            } else {
                x
            }
        })
        .collect())
}

/// A point in the search space together with its evaluation state.
///
/// `fitness` is `None` until the candidate has been evaluated; comparing an
/// unevaluated candidate is a programming error, not a sentinel value.
#[derive(Debug, Clone, PartialEq)]
pub struct Candidate<F = f64> {
    pub position: Vec<F>,
    pub fitness: Option<F>,
    pub feasible: bool,
    /// Exhaustion counter for the ABC scout phase.
    pub trial: u32,
}

impl<F: Scalar> Candidate<F> {
    pub fn unevaluated(position: Vec<F>) -> Self {
        Self {
            position,
            fitness: None,
            feasible: false,
            trial: 0,
        }
    }

    /// Fitness of an evaluated candidate.
    ///
    /// Panics if the candidate has not been evaluated; the loops only ever
    /// compare evaluated candidates.
    pub fn fitness(&self) -> F {
        self.fitness.expect("candidate compared before evaluation")
    }
}
