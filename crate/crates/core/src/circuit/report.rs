use super::{CircuitError, Metric, ProblemSpec};
use crate::Real;
use serde::{Deserialize, Serialize};

/// Evaluated circuit specs, all SI units (Hz, V/s, W, V/sqrt(Hz), m^2).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PerformanceReport {
    pub gain_db: Real,
    pub f3db_hz: Real,
    pub ugb_hz: Real,
    pub pm_degrees: Real,
    pub sr_volts_per_second: Real,
    pub power_watts: Real,
    pub noise_v_per_sqrt_hz: Real,
    pub area_m2: Real,
    pub saturation_ok: bool,
    /// Devices that fell out of saturation, with their V_DS - V_ov margin.
    pub saturation_failures: Vec<(String, Real)>,
}

impl PerformanceReport {
    pub fn metric(&self, metric: Metric) -> Real {
        match metric {
            Metric::GainDb => self.gain_db,
            Metric::F3db => self.f3db_hz,
            Metric::Ugb => self.ugb_hz,
            Metric::Pm => self.pm_degrees,
            Metric::Sr => self.sr_volts_per_second,
            Metric::Power => self.power_watts,
            Metric::Noise => self.noise_v_per_sqrt_hz,
            Metric::Area => self.area_m2,
        }
    }
}

/// Total gate area: sum of W_i * L_i over the physical devices.
pub fn area_fitness(widths: &[Real], lengths: &[Real]) -> Result<Real, CircuitError> {
    if widths.len() != lengths.len() {
        return Err(CircuitError::AreaLengthMismatch {
            widths: widths.len(),
            lengths: lengths.len(),
        });
    }
    Ok(widths.iter().zip(lengths).map(|(w, l)| w * l).sum())
}

/// Full constraint check: every spec constraint plus all-devices-saturated.
/// Returns pass/fail and the list of violated metrics with signed margins.
pub fn survivability_test(
    report: &PerformanceReport,
    spec: &ProblemSpec,
) -> (bool, Vec<(String, Real)>) {
    let mut violations = Vec::new();
    for c in &spec.constraints {
        let margin = c.margin(report.metric(c.metric));
        if margin < 0.0 {
            violations.push((c.metric.name().to_string(), margin));
        }
    }
    if !report.saturation_ok {
        for (device, margin) in &report.saturation_failures {
            violations.push((format!("saturation:{device}"), *margin));
        }
    }
    (violations.is_empty(), violations)
}
