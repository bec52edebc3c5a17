use crate::{Evaluation, Evaluator, Real, SearchSpace};

/// Desk-scale test functions with known optima, used to sanity-check the
/// optimizers without any circuit model in the loop.
pub struct BenchmarkEvaluator {
    kind: Kind,
    space: SearchSpace,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kind {
    Sphere,
    Rosenbrock,
    /// Sphere with the feasibility predicate x0 >= 1, so the retry and
    /// repair paths actually fire; constrained minimum sits at
    /// (1, 0, ..., 0) with fitness 1.
    ConstrainedSphere,
}

impl BenchmarkEvaluator {
    pub fn new(name: &str, dimension: usize) -> Option<Self> {
        if dimension == 0 {
            return None;
        }
        let kind = match name {
            "sphere" => Kind::Sphere,
            "rosenbrock" => Kind::Rosenbrock,
            "constrained_sphere" => Kind::ConstrainedSphere,
            _ => return None,
        };
        let space = SearchSpace::new(vec![-5.0; dimension], vec![5.0; dimension])
            .expect("static box is valid");
        Some(Self { kind, space })
    }

    pub fn names() -> &'static [&'static str] {
        &["sphere", "rosenbrock", "constrained_sphere"]
    }
}

impl Evaluator for BenchmarkEvaluator {
    fn derived_bounds(&self) -> SearchSpace {
        self.space.clone()
    }

    fn evaluate(&self, position: &[Real]) -> Evaluation {
        let sphere = || position.iter().map(|x| x * x).sum::<Real>();
        match self.kind {
            Kind::Sphere => Evaluation::feasible(sphere()),
            Kind::Rosenbrock => {
                let fitness = position
                    .windows(2)
                    .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (1.0 - w[0]).powi(2))
                    .sum::<Real>();
                Evaluation::feasible(fitness)
            }
            Kind::ConstrainedSphere => {
                let fitness = sphere();
                let margin = position[0] - 1.0;
                if margin >= 0.0 {
                    Evaluation::feasible(fitness)
                } else {
                    Evaluation {
                        fitness,
                        feasible: false,
                        violations: vec![("x0_floor".into(), margin)],
                    }
                }
            }
        }
    }
}
