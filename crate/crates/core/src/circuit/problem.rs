use super::{CircuitError, TechnologyCard};
use crate::Real;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Topology {
    TwoStageMiller,
    FoldedCascode,
}

impl Topology {
    /// Decision-variable count: the matched-pair-collapsed vector the
    /// optimizer sees.
    pub fn dimension(self) -> usize {
        match self {
            Topology::TwoStageMiller => 6,
            Topology::FoldedCascode => 7,
        }
    }

    /// Physical transistor count after matched-pair expansion.
    pub fn transistor_count(self) -> usize {
        match self {
            Topology::TwoStageMiller => 8,
            Topology::FoldedCascode => 13,
        }
    }

    /// Names of the decision variables, in position-vector order.
    pub fn variable_names(self) -> &'static [&'static str] {
        match self {
            Topology::TwoStageMiller => &["w12", "w34", "w58", "w6", "w7", "ibias"],
            Topology::FoldedCascode => &["w12", "w34bp", "wbn5", "w67", "w89", "w1011", "ibias"],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    Area,
    Noise,
    Power,
}

/// Constrained performance metrics; `sr` is in V/s and `noise` in V/sqrt(Hz).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    GainDb,
    F3db,
    Ugb,
    Pm,
    Sr,
    Power,
    Noise,
    Area,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::GainDb => "gain_db",
            Metric::F3db => "f3db",
            Metric::Ugb => "ugb",
            Metric::Pm => "pm",
            Metric::Sr => "sr",
            Metric::Power => "power",
            Metric::Noise => "noise",
            Metric::Area => "area",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    AtLeast,
    AtMost,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub metric: Metric,
    pub direction: Direction,
    pub threshold: Real,
}

impl Constraint {
    pub fn at_least(metric: Metric, threshold: Real) -> Self {
        Self {
            metric,
            direction: Direction::AtLeast,
            threshold,
        }
    }

    pub fn at_most(metric: Metric, threshold: Real) -> Self {
        Self {
            metric,
            direction: Direction::AtMost,
            threshold,
        }
    }

    /// Signed margin; negative means violated.
    pub fn margin(&self, value: Real) -> Real {
        match self.direction {
            Direction::AtLeast => value - self.threshold,
            Direction::AtMost => self.threshold - value,
        }
    }
}

/// One op-amp sizing task: topology, objective, capacitors, swing/common-mode
/// assumptions, the aspect-ratio box, and the constraint set. All fields are
/// SI units.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ProblemSpec {
    pub topology: Topology,
    pub objective: Objective,
    /// Load capacitance, farads.
    pub cl_farads: Real,
    /// Miller compensation capacitance, farads (two-stage only).
    #[serde(default)]
    pub cc_farads: Option<Real>,
    pub icmr_min_volts: Real,
    pub icmr_max_volts: Real,
    /// Output swing assumed for the saturation checks and the
    /// output-stage bound derivation.
    pub vout_min_volts: Real,
    pub vout_max_volts: Real,
    pub aspect_ratio_min: Real,
    pub aspect_ratio_max: Real,
    /// Lower edge of the raw bias-current box, amperes.
    pub ibias_floor_amps: Real,
    pub constraints: Vec<Constraint>,
}

impl ProblemSpec {
    /// Two-stage Miller preset: 1.1 V / 60 nm class, C_L = 200 fF,
    /// C_c = 0.3 * C_L, 400 uW power budget.
    pub fn two_stage_65n() -> Self {
        let cl = 200e-15;
        Self {
            topology: Topology::TwoStageMiller,
            objective: Objective::Area,
            cl_farads: cl,
            cc_farads: Some(0.3 * cl),
            icmr_min_volts: 0.40,
            icmr_max_volts: 1.00,
            vout_min_volts: 0.20,
            vout_max_volts: 1.00,
            aspect_ratio_min: 2.0,
            aspect_ratio_max: 200.0,
            ibias_floor_amps: 1e-6,
            constraints: vec![
                Constraint::at_least(Metric::GainDb, 20.0),
                Constraint::at_most(Metric::Power, 400e-6),
                Constraint::at_least(Metric::Sr, 100e6),
                Constraint::at_least(Metric::F3db, 10e6),
                Constraint::at_least(Metric::Ugb, 100e6),
                Constraint::at_least(Metric::Pm, 60.0),
                Constraint::at_most(Metric::Noise, 60e-9),
            ],
        }
    }

    /// Alternative two-stage preset with the tighter 150 uW power budget.
    pub fn two_stage_65n_150uw() -> Self {
        let mut spec = Self::two_stage_65n();
        for c in &mut spec.constraints {
            if c.metric == Metric::Power {
                c.threshold = 150e-6;
            }
        }
        spec
    }

    /// Folded cascode preset: 1.8 V / 180 nm class, C_L = 5 pF.
    pub fn folded_cascode_180n() -> Self {
        Self {
            topology: Topology::FoldedCascode,
            objective: Objective::Area,
            cl_farads: 5e-12,
            cc_farads: None,
            icmr_min_volts: 0.50,
            icmr_max_volts: 1.30,
            vout_min_volts: 0.40,
            vout_max_volts: 1.40,
            aspect_ratio_min: 4.0 / 3.0,
            aspect_ratio_max: 1000.0,
            ibias_floor_amps: 10e-6,
            constraints: vec![
                Constraint::at_least(Metric::GainDb, 40.0),
                Constraint::at_most(Metric::Power, 5e-3),
                Constraint::at_least(Metric::Sr, 20e6),
                Constraint::at_least(Metric::Ugb, 40e6),
                Constraint::at_least(Metric::Pm, 60.0),
            ],
        }
    }

    pub fn preset(name: &str) -> Option<(Self, TechnologyCard)> {
        match name {
            "two_stage_65n" => Some((Self::two_stage_65n(), TechnologyCard::generic_65n())),
            "two_stage_65n_150uw" => {
                Some((Self::two_stage_65n_150uw(), TechnologyCard::generic_65n()))
            }
            "folded_cascode_180n" => {
                Some((Self::folded_cascode_180n(), TechnologyCard::generic_180n()))
            }
            _ => None,
        }
    }

    pub fn preset_names() -> &'static [&'static str] {
        &[
            "two_stage_65n",
            "two_stage_65n_150uw",
            "folded_cascode_180n",
        ]
    }

    pub fn cc(&self) -> Real {
        self.cc_farads.unwrap_or(self.cl_farads)
    }

    pub fn constraint(&self, metric: Metric) -> Option<&Constraint> {
        self.constraints.iter().find(|c| c.metric == metric)
    }

    pub fn validate(&self, tech: &TechnologyCard) -> Result<(), CircuitError> {
        if !(self.aspect_ratio_min < self.aspect_ratio_max) {
            return Err(CircuitError::BadProblem(
                "aspect ratio bounds must satisfy min < max".into(),
            ));
        }
        if self.topology == Topology::TwoStageMiller && self.cc_farads.is_none() {
            return Err(CircuitError::BadProblem(
                "two-stage topology needs cc_farads".into(),
            ));
        }
        for c in &self.constraints {
            if !c.threshold.is_finite() {
                return Err(CircuitError::BadProblem(format!(
                    "constraint {} has non-finite threshold",
                    c.metric.name()
                )));
            }
        }
        if !(self.icmr_min_volts < self.icmr_max_volts) {
            return Err(CircuitError::BadProblem(
                "icmr_min must be < icmr_max".into(),
            ));
        }
        if self.icmr_min_volts <= tech.vth_n {
            return Err(CircuitError::BadProblem(
                "icmr_min must exceed the NMOS threshold for the tail bound".into(),
            ));
        }
        Ok(())
    }
}

/// Combined on-disk format: a technology card plus a problem spec.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProblemFile {
    pub technology: TechnologyCard,
    pub problem: ProblemSpec,
}

impl ProblemFile {
    pub fn from_toml(text: &str) -> Result<Self, CircuitError> {
        toml::from_str(text).map_err(|e| CircuitError::Parse(e.to_string()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("problem file serializes")
    }
}
