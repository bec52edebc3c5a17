//! The four modified evolutionary algorithms and their standard baselines.
//!
//! Every runner works against the [`Evaluator`] contract: candidates are
//! initialized inside the derived feasible bounds, every update is clamped
//! back into those bounds, and a candidate only enters the population after
//! passing the survivability test (with bounded retries).

mod abco;
mod common;
mod ga;
mod gwo;
mod kernels;
mod pso;
mod schedules;

pub use abco::run_mabco;
pub use common::{IterationStats, OptimizerResult, Variant};
pub use ga::run_mga;
pub use gwo::run_mgwo;
pub use kernels::{
    abco_neighbor, ga_mutation_bounds, gwo_coefficients, gwo_position_update, pso_update,
    single_point_crossover,
};
pub use pso::run_mpso;
pub use schedules::{
    abco_dim_schedule, abco_limit_schedule, ga_alpha_schedule, gwo_a_schedule, pso_inertia_schedule,
};

use crate::core::{CoreError, Evaluator};
use serde::{Deserialize, Serialize};

/// Which algorithm a config selects; `M*` are the modified variants.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Algorithm {
    Mabco,
    Mga,
    Mgwo,
    Mpso,
    Sabco,
    Sga,
    Sgwo,
    Spso,
}

impl Algorithm {
    pub fn variant(self) -> Variant {
        match self {
            Algorithm::Mabco | Algorithm::Mga | Algorithm::Mgwo | Algorithm::Mpso => {
                Variant::Modified
            }
            _ => Variant::Standard,
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        Some(match name.to_ascii_uppercase().as_str() {
            "MABCO" => Algorithm::Mabco,
            "MGA" => Algorithm::Mga,
            "MGWO" => Algorithm::Mgwo,
            "MPSO" => Algorithm::Mpso,
            "SABCO" => Algorithm::Sabco,
            "SGA" => Algorithm::Sga,
            "SGWO" => Algorithm::Sgwo,
            "SPSO" => Algorithm::Spso,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Mabco => "MABCO",
            Algorithm::Mga => "MGA",
            Algorithm::Mgwo => "MGWO",
            Algorithm::Mpso => "MPSO",
            Algorithm::Sabco => "SABCO",
            Algorithm::Sga => "SGA",
            Algorithm::Sgwo => "SGWO",
            Algorithm::Spso => "SPSO",
        }
    }
}

/// ABC parameters; the limit schedule runs between `limit_min` and
/// `limit_max`, `max_count` caps survivability retries per update.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AbcoParams {
    pub population: usize,
    pub max_ite: usize,
    pub limit_min: u32,
    pub limit_max: u32,
    pub max_count: u32,
}

impl Default for AbcoParams {
    fn default() -> Self {
        Self {
            population: 20,
            max_ite: 300,
            limit_min: 5,
            limit_max: 15,
            max_count: 10,
        }
    }
}

impl AbcoParams {
    pub fn validate(&self) -> Result<(), CoreError> {
        if self.population < 2 {
            return Err(CoreError::InvalidParameter(
                "ABC population must be at least 2 (partner index k != i)".into(),
            ));
        }
        if self.max_ite == 0 || self.max_count == 0 || self.limit_min == 0 {
            return Err(CoreError::InvalidParameter(
                "ABC iteration, retry, and limit parameters must be positive".into(),
            ));
        }
        if self.limit_min > self.limit_max {
            return Err(CoreError::InvalidParameter(
                "limit_min must not exceed limit_max".into(),
            ));
        }
        Ok(())
    }
}

/// GA parameters; `alpha` bounds the mutation window schedule.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GaParams {
    pub population: usize,
    pub gen_max: usize,
    pub alpha_min: f64,
    pub alpha_max: f64,
    pub max_count: u32,
}

impl Default for GaParams {
    fn default() -> Self {
        Self {
            population: 20,
            gen_max: 300,
            alpha_min: 0.1,
            alpha_max: 0.9,
            max_count: 10,
        }
    }
}

impl GaParams {
    pub fn validate(&self) -> Result<(), CoreError> {
        if self.population < 2 {
            return Err(CoreError::InvalidParameter(
                "GA population must be at least 2".into(),
            ));
        }
        if self.gen_max == 0 || self.max_count == 0 {
            return Err(CoreError::InvalidParameter(
                "GA generations and retry cap must be positive".into(),
            ));
        }
        if !(self.alpha_min > 0.0 && self.alpha_min <= self.alpha_max) {
            return Err(CoreError::InvalidParameter(
                "GA alpha bounds must satisfy 0 < alpha_min <= alpha_max".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GwoParams {
    pub population: usize,
    pub max_ite: usize,
    pub max_count: u32,
}

impl Default for GwoParams {
    fn default() -> Self {
        Self {
            population: 20,
            max_ite: 300,
            max_count: 10,
        }
    }
}

impl GwoParams {
    pub fn validate(&self) -> Result<(), CoreError> {
        if self.population < 3 {
            return Err(CoreError::InvalidParameter(
                "GWO needs at least 3 agents for the alpha/beta/delta leaders".into(),
            ));
        }
        if self.max_ite == 0 || self.max_count == 0 {
            return Err(CoreError::InvalidParameter(
                "GWO iterations and retry cap must be positive".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PsoParams {
    pub population: usize,
    pub max_ite: usize,
    pub w_min: f64,
    pub w_max: f64,
    pub c1: f64,
    pub c2: f64,
    pub max_count: u32,
    /// Replace a particle via the population generator after it exhausts its
    /// update retries.
    pub regenerate_on_failure: bool,
}

impl Default for PsoParams {
    fn default() -> Self {
        Self {
            population: 20,
            max_ite: 300,
            w_min: 0.5,
            w_max: 0.8,
            c1: 1.7,
            c2: 1.7,
            max_count: 10,
            regenerate_on_failure: true,
        }
    }
}

impl PsoParams {
    pub fn validate(&self) -> Result<(), CoreError> {
        if self.population < 2 {
            return Err(CoreError::InvalidParameter(
                "PSO population must be at least 2".into(),
            ));
        }
        if self.max_ite == 0 || self.max_count == 0 {
            return Err(CoreError::InvalidParameter(
                "PSO iterations and retry cap must be positive".into(),
            ));
        }
        if !(0.0 <= self.w_min && self.w_min <= self.w_max) {
            return Err(CoreError::InvalidParameter(
                "inertia bounds must satisfy 0 <= w_min <= w_max".into(),
            ));
        }
        Ok(())
    }
}

/// Algorithm-specific parameter blocks under one roof for configs.
#[derive(Debug, Clone, Serialize, Deserialize, Default)]
pub struct AlgorithmParams {
    #[serde(default)]
    pub abco: AbcoParams,
    #[serde(default)]
    pub ga: GaParams,
    #[serde(default)]
    pub gwo: GwoParams,
    #[serde(default)]
    pub pso: PsoParams,
}

/// Run any of the eight algorithm variants with shared population/iteration
/// settings taken from the per-algorithm parameter blocks.
pub fn run_algorithm(
    algorithm: Algorithm,
    problem: &dyn Evaluator,
    params: &AlgorithmParams,
    population: usize,
    iterations: usize,
    seed: u64,
) -> Result<OptimizerResult, CoreError> {
    let variant = algorithm.variant();
    match algorithm {
        Algorithm::Mabco | Algorithm::Sabco => {
            let mut p = params.abco.clone();
            p.population = population;
            p.max_ite = iterations;
            run_mabco(problem, &p, seed, variant)
        }
        Algorithm::Mga | Algorithm::Sga => {
            let mut p = params.ga.clone();
            p.population = population;
            p.gen_max = iterations;
            run_mga(problem, &p, seed, variant)
        }
        Algorithm::Mgwo | Algorithm::Sgwo => {
            let mut p = params.gwo.clone();
            p.population = population;
            p.max_ite = iterations;
            run_mgwo(problem, &p, seed, variant)
        }
        Algorithm::Mpso | Algorithm::Spso => {
            let mut p = params.pso.clone();
            p.population = population;
            p.max_ite = iterations;
            run_mpso(problem, &p, seed, variant)
        }
    }
}
