//! Feasibility-driven bound derivation for the sizing variables.
//!
//! Instead of handing the optimizer the raw aspect-ratio box, the width and
//! bias intervals are tightened analytically from the constraint set: slew
//! rate and power budget pin the bias current, the common-mode and output
//! swing requirements translate into overdrive ceilings, and overdrive
//! ceilings translate into width floors through the square law. Populations
//! drawn inside these intervals survive the constraint check far more often
//! than uniform-box samples.

use super::{CircuitError, ProblemSpec, TechnologyCard, Topology};
use crate::core::Rng;
use crate::{clamp_to_nearest_bound, Candidate, Real, SearchSpace};
use rand::Rng as _;

/// Per-variable closed intervals, in position-vector order. Unlike
/// `SearchSpace` a degenerate interval (`lower == upper`) is allowed.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivedBounds {
    lower: Vec<Real>,
    upper: Vec<Real>,
}

impl DerivedBounds {
    pub fn new(lower: Vec<Real>, upper: Vec<Real>) -> Result<Self, CircuitError> {
        if lower.len() != upper.len() || lower.is_empty() {
            return Err(CircuitError::BadProblem(
                "bound vectors must be non-empty and equally long".into(),
            ));
        }
        for (&lo, &hi) in lower.iter().zip(&upper) {
            if !(lo <= hi) {
                return Err(CircuitError::BadProblem(format!(
                    "inverted bound interval [{lo:.3e}, {hi:.3e}]"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    pub fn dimension(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[Real] {
        &self.lower
    }

    pub fn upper(&self) -> &[Real] {
        &self.upper
    }

    pub fn contains(&self, position: &[Real]) -> bool {
        position.len() == self.lower.len()
            && position
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(&x, (&lo, &hi))| x >= lo && x <= hi)
    }

    /// View as a `SearchSpace`; fails on degenerate intervals, which valid
    /// sizing problems never produce.
    pub fn space(&self) -> Result<SearchSpace, CircuitError> {
        Ok(SearchSpace::new(self.lower.clone(), self.upper.clone())?)
    }
}

impl From<&SearchSpace> for DerivedBounds {
    fn from(space: &SearchSpace) -> Self {
        Self {
            lower: space.lower().to_vec(),
            upper: space.upper().to_vec(),
        }
    }
}

/// The untightened optimization box: aspect-ratio widths plus the raw
/// bias-current window from the floor up to the full power budget.
pub fn problem_box(spec: &ProblemSpec, tech: &TechnologyCard) -> Result<SearchSpace, CircuitError> {
    let l = tech.l_fixed_meters;
    let w_lo = spec.aspect_ratio_min * l;
    let w_hi = spec.aspect_ratio_max * l;
    let i_hi = current_cap(spec, tech)?;
    let widths = spec.topology.dimension() - 1;
    let mut lower = vec![w_lo; widths];
    let mut upper = vec![w_hi; widths];
    lower.push(spec.ibias_floor_amps);
    upper.push(i_hi);
    Ok(SearchSpace::new(lower, upper)?)
}

/// Total supply-current cap implied by the power budget.
fn current_cap(spec: &ProblemSpec, tech: &TechnologyCard) -> Result<Real, CircuitError> {
    let power = spec
        .constraint(super::Metric::Power)
        .ok_or_else(|| CircuitError::BadProblem("missing power constraint".into()))?;
    Ok(power.threshold / tech.vdd_volts)
}

struct Interval {
    variable: &'static str,
    lower: Real,
    lower_from: &'static str,
    upper: Real,
    upper_from: &'static str,
}

impl Interval {
    fn width(variable: &'static str, spec: &ProblemSpec, tech: &TechnologyCard) -> Self {
        Self {
            variable,
            lower: spec.aspect_ratio_min * tech.l_fixed_meters,
            lower_from: "aspect ratio floor",
            upper: spec.aspect_ratio_max * tech.l_fixed_meters,
            upper_from: "aspect ratio ceiling",
        }
    }

    fn raise_lower(&mut self, value: Real, from: &'static str) {
        if value > self.lower {
            self.lower = value;
            self.lower_from = from;
        }
    }

    fn close(self) -> Result<(Real, Real), CircuitError> {
        if self.lower > self.upper {
            return Err(CircuitError::InfeasibleSpec {
                variable: self.variable,
                lower: self.lower,
                upper: self.upper,
                constraint_low: self.lower_from,
                constraint_high: self.upper_from,
            });
        }
        Ok((self.lower, self.upper))
    }
}

/// Width floor that keeps the overdrive at or below `vov_max` when the
/// device carries `current`: W >= 2·I·L / (kp·Vov²).
fn width_floor_for_overdrive(
    variable: &'static str,
    current: Real,
    kp: Real,
    vov_max: Real,
    l: Real,
    ceiling_from: &'static str,
) -> Result<Real, CircuitError> {
    if !(vov_max > 0.0) {
        // No positive overdrive fits in the voltage window at all.
        return Err(CircuitError::InfeasibleSpec {
            variable,
            lower: 0.0,
            upper: vov_max,
            constraint_low: "square-law overdrive > 0",
            constraint_high: ceiling_from,
        });
    }
    Ok(2.0 * current * l / (kp * vov_max * vov_max))
}

/// Width floor that keeps the transconductance at or above `gm_min` when
/// the device carries `current`: W >= gm²·L / (2·kp·I).
fn width_floor_for_gm(gm_min: Real, current: Real, kp: Real, l: Real) -> Real {
    gm_min * gm_min * l / (2.0 * kp * current)
}

/// Derive the tightened per-variable intervals for a sizing problem.
///
/// Steps, in order: (1) the bias-current window from slew rate and the
/// power budget split equally across supply branches; (2) load/source PMOS
/// width floors from the upper common-mode limit; (3) input-pair width
/// floor from the bandwidth target; (4) tail width floor from the lower
/// common-mode limit; (5) output/cascode PMOS width floors from the upper
/// output swing; (6) output/cascode NMOS width floors from the lower output
/// swing. Every interval is intersected with the aspect-ratio box.
pub fn derive_bounds(
    spec: &ProblemSpec,
    tech: &TechnologyCard,
) -> Result<DerivedBounds, CircuitError> {
    spec.validate(tech)?;
    tech.validate()?;
    match spec.topology {
        Topology::TwoStageMiller => derive_two_stage(spec, tech),
        Topology::FoldedCascode => derive_folded(spec, tech),
    }
}

fn bias_interval(
    spec: &ProblemSpec,
    tech: &TechnologyCard,
    sr_to_ibias: impl Fn(Real) -> Real,
    branches: Real,
) -> Result<Interval, CircuitError> {
    let mut ib = Interval {
        variable: "ibias",
        lower: spec.ibias_floor_amps,
        lower_from: "bias floor",
        upper: current_cap(spec, tech)? / branches,
        upper_from: "power budget",
    };
    if let Some(sr) = spec.constraint(super::Metric::Sr) {
        ib.raise_lower(sr_to_ibias(sr.threshold), "slew rate");
    }
    Ok(ib)
}

fn derive_two_stage(
    spec: &ProblemSpec,
    tech: &TechnologyCard,
) -> Result<DerivedBounds, CircuitError> {
    let l = tech.l_fixed_meters;
    let vdd = tech.vdd_volts;
    let cc = spec.cc();
    let vth_p = tech.vth_p.abs();

    // Step 1: bias current. SR = I_tail/C_c with the tail mirroring Ibias;
    // power splits across mirror, first and second stage.
    let ib = bias_interval(spec, tech, |sr| sr * cc, 3.0)?;
    let i_lo = ib.lower;
    let i_half = i_lo / 2.0;

    // Step 2: PMOS loads M3/M4. The input device needs V_GS1 headroom under
    // the diode-connected load at the top of the common-mode range:
    // V_SG3 <= V_DD - ICMR_max + V_thn.
    let vov3_max = vdd - spec.icmr_max_volts + tech.vth_n - vth_p;
    let mut w34 = Interval::width("w34", spec, tech);
    w34.raise_lower(
        width_floor_for_overdrive("w34", i_half, tech.kp_p, vov3_max, l, "upper common-mode")?,
        "upper common-mode",
    );

    // Step 3: input pair from the bandwidth target gm1 >= 2*pi*UGB*C_c.
    let mut w12 = Interval::width("w12", spec, tech);
    if let Some(ugb) = spec.constraint(super::Metric::Ugb) {
        let gm_min = 2.0 * std::f64::consts::PI * ugb.threshold * cc;
        w12.raise_lower(
            width_floor_for_gm(gm_min, i_half, tech.kp_n, l),
            "bandwidth target",
        );
    }

    // Step 4: tail M5/M8. The tail keeps saturation at the bottom of the
    // common-mode range: V_ov5 <= ICMR_min - V_thn.
    let vov5_max = spec.icmr_min_volts - tech.vth_n;
    let mut w58 = Interval::width("w58", spec, tech);
    w58.raise_lower(
        width_floor_for_overdrive("w58", i_lo, tech.kp_n, vov5_max, l, "lower common-mode")?,
        "lower common-mode",
    );

    // Step 5: output PMOS M6 stays saturated at the top of the swing.
    let vov6_max = vdd - spec.vout_max_volts;
    let mut w6 = Interval::width("w6", spec, tech);
    w6.raise_lower(
        width_floor_for_overdrive("w6", i_lo, tech.kp_p, vov6_max, l, "upper output swing")?,
        "upper output swing",
    );

    // Step 6: output NMOS M7 stays saturated at the bottom of the swing.
    let vov7_max = spec.vout_min_volts;
    let mut w7 = Interval::width("w7", spec, tech);
    w7.raise_lower(
        width_floor_for_overdrive("w7", i_lo, tech.kp_n, vov7_max, l, "lower output swing")?,
        "lower output swing",
    );

    collect_intervals(vec![w12, w34, w58, w6, w7, ib])
}

fn derive_folded(spec: &ProblemSpec, tech: &TechnologyCard) -> Result<DerivedBounds, CircuitError> {
    let l = tech.l_fixed_meters;
    let vdd = tech.vdd_volts;
    let cl = spec.cl_farads;
    let vth_p = tech.vth_p.abs();

    // Step 1: bias current. SR = min(tail, fold-branch)/C_L = (Ibias/2)/C_L;
    // power splits across bias branch, tail, and the two output branches.
    let ib = bias_interval(spec, tech, |sr| 2.0 * sr * cl, 4.0)?;
    let i_lo = ib.lower;
    let i_half = i_lo / 2.0;
    let i_branch = i_half;

    // Step 2: PMOS sources M3/M4/Mbp under the upper common-mode limit.
    let vov3_max = vdd - spec.icmr_max_volts + tech.vth_n - vth_p;
    let mut w34bp = Interval::width("w34bp", spec, tech);
    w34bp.raise_lower(
        width_floor_for_overdrive("w34bp", i_lo, tech.kp_p, vov3_max, l, "upper common-mode")?,
        "upper common-mode",
    );

    // Step 3: input pair from gm1 >= 2*pi*UGB*C_L.
    let mut w12 = Interval::width("w12", spec, tech);
    if let Some(ugb) = spec.constraint(super::Metric::Ugb) {
        let gm_min = 2.0 * std::f64::consts::PI * ugb.threshold * cl;
        w12.raise_lower(
            width_floor_for_gm(gm_min, i_half, tech.kp_n, l),
            "bandwidth target",
        );
    }

    // Step 4: tail M5/Mbn under the lower common-mode limit.
    let vov5_max = spec.icmr_min_volts - tech.vth_n;
    let mut wbn5 = Interval::width("wbn5", spec, tech);
    wbn5.raise_lower(
        width_floor_for_overdrive("wbn5", i_lo, tech.kp_n, vov5_max, l, "lower common-mode")?,
        "lower common-mode",
    );

    // Step 5: PMOS cascodes M6/M7 stay saturated at the top of the swing.
    let vov6_max = vdd - spec.vout_max_volts;
    let mut w67 = Interval::width("w67", spec, tech);
    w67.raise_lower(
        width_floor_for_overdrive(
            "w67",
            i_branch,
            tech.kp_p,
            vov6_max,
            l,
            "upper output swing",
        )?,
        "upper output swing",
    );

    // Step 6: NMOS cascodes and sinks share the lower swing window.
    let vov_n_max = spec.vout_min_volts / 2.0;
    let mut w89 = Interval::width("w89", spec, tech);
    w89.raise_lower(
        width_floor_for_overdrive(
            "w89",
            i_branch,
            tech.kp_n,
            vov_n_max,
            l,
            "lower output swing",
        )?,
        "lower output swing",
    );
    let mut w1011 = Interval::width("w1011", spec, tech);
    w1011.raise_lower(
        width_floor_for_overdrive(
            "w1011",
            i_branch,
            tech.kp_n,
            vov_n_max,
            l,
            "lower output swing",
        )?,
        "lower output swing",
    );

    collect_intervals(vec![w12, w34bp, wbn5, w67, w89, w1011, ib])
}

fn collect_intervals(intervals: Vec<Interval>) -> Result<DerivedBounds, CircuitError> {
    let mut lower = Vec::with_capacity(intervals.len());
    let mut upper = Vec::with_capacity(intervals.len());
    for interval in intervals {
        let (lo, hi) = interval.close()?;
        lower.push(lo);
        upper.push(hi);
    }
    DerivedBounds::new(lower, upper)
}

/// Draw one unevaluated candidate uniformly inside the derived intervals.
pub fn generate_candidate_pgf(bounds: &DerivedBounds, rng: &mut Rng) -> Candidate {
    let position = bounds
        .lower
        .iter()
        .zip(&bounds.upper)
        .map(|(&lo, &hi)| rng.gen_range(lo..=hi))
        .collect();
    Candidate::unevaluated(position)
}

/// Clamp an out-of-bounds candidate to the nearest bound of each interval.
/// The fitness is dropped when the position actually moves; an interior
/// candidate passes through untouched.
pub fn repair_bounds(
    candidate: &Candidate,
    bounds: &DerivedBounds,
) -> Result<Candidate, CircuitError> {
    if candidate.position.len() != bounds.dimension() {
        return Err(CircuitError::DimensionMismatch {
            expected: bounds.dimension(),
            got: candidate.position.len(),
        });
    }
    let position: Vec<Real> = candidate
        .position
        .iter()
        .zip(bounds.lower.iter().zip(&bounds.upper))
        .map(|(&x, (&lo, &hi))| x.clamp(lo, hi))
        .collect();
    let mut repaired = candidate.clone();
    if position != repaired.position {
        repaired.fitness = None;
        repaired.feasible = false;
        repaired.position = position;
    }
    Ok(repaired)
}

/// SearchSpace flavor of [`repair_bounds`], used by the optimizer kernels.
pub fn repair_into_space(
    candidate: &Candidate,
    space: &SearchSpace,
) -> Result<Candidate, CircuitError> {
    let position = clamp_to_nearest_bound(&candidate.position, space)?;
    let mut repaired = candidate.clone();
    if position != repaired.position {
        repaired.fitness = None;
        repaired.feasible = false;
        repaired.position = position;
    }
    Ok(repaired)
}
