//! Analytic model of the two-stage Miller-compensated op-amp.
//!
//! Device roles: M1/M2 NMOS input pair, M3/M4 PMOS mirror loads, M5 NMOS
//! tail with M8 as its diode-connected mirror reference, M6 PMOS output
//! driver, M7 NMOS output sink mirrored from M8. Position vector:
//! [W12, W34, W58, W6, W7, Ibias].

use super::device::{gds_at_current, gm_at_current, overdrive, BOLTZMANN};
use super::{area_fitness, CircuitError, PerformanceReport, ProblemSpec, TechnologyCard};
use crate::Real;
use std::f64::consts::PI;

pub fn evaluate_two_stage(
    position: &[Real],
    spec: &ProblemSpec,
    tech: &TechnologyCard,
) -> Result<PerformanceReport, CircuitError> {
    if position.len() != 6 {
        return Err(CircuitError::DimensionMismatch {
            expected: 6,
            got: position.len(),
        });
    }
    let names = ["w12", "w34", "w58", "w6", "w7", "ibias"];
    for (name, &value) in names.iter().zip(position) {
        if !(value > 0.0) {
            return Err(CircuitError::NonPositiveVariable { name, value });
        }
    }
    let [w12, w34, w58, w6, w7, ibias] = [
        position[0],
        position[1],
        position[2],
        position[3],
        position[4],
        position[5],
    ];
    let l = tech.l_fixed_meters;
    let vdd = tech.vdd_volts;
    let cc = spec.cc();
    let cl = spec.cl_farads;

    // DC currents from the M8 mirror (W5 = W8, so the tail copies Ibias;
    // M7 scales it into the second stage).
    let i_tail = ibias;
    let i_half = i_tail / 2.0;
    let i_stage2 = ibias * (w7 / w58);

    let gm1 = gm_at_current(i_half, tech.kp_n, w12 / l);
    let gm3 = gm_at_current(i_half, tech.kp_p, w34 / l);
    let gm6 = gm_at_current(i_stage2, tech.kp_p, w6 / l);

    let gds2 = gds_at_current(i_half, tech.lambda_n);
    let gds4 = gds_at_current(i_half, tech.lambda_p);
    let gds6 = gds_at_current(i_stage2, tech.lambda_p);
    let gds7 = gds_at_current(i_stage2, tech.lambda_n);

    let av1 = gm1 / (gds2 + gds4);
    let av2 = gm6 / (gds6 + gds7);
    let av = av1 * av2;
    let gain_db = 20.0 * av.log10();

    let ugb = gm1 / (2.0 * PI * cc);
    let f3db = ugb / av;
    // Non-dominant pole from the output stage driving the load.
    let p2 = gm6 / (2.0 * PI * cl);
    let pm = 90.0 - (ugb / p2).atan().to_degrees();

    let sr = i_tail / cc;
    let power = vdd * (ibias + i_tail + i_stage2);

    // Input-referred thermal noise of the first stage.
    let kt16_3 = 16.0 * BOLTZMANN * tech.temperature_kelvin / 3.0;
    let noise = (kt16_3 / gm1 * (1.0 + gm3 / gm1)).sqrt();

    // Saturation at the assumed DC point: mid common-mode in, mid-rail out.
    let vcm = 0.5 * (spec.icmr_min_volts + spec.icmr_max_volts);
    let vout = 0.5 * vdd;
    let vth_n = tech.vth_n;
    let vth_p = tech.vth_p.abs();

    let vov1 = overdrive(i_half, tech.kp_n, w12 / l);
    let vov3 = overdrive(i_half, tech.kp_p, w34 / l);
    let vov5 = overdrive(i_tail, tech.kp_n, w58 / l);
    let vov6 = overdrive(i_stage2, tech.kp_p, w6 / l);
    let vov7 = overdrive(i_stage2, tech.kp_n, w7 / l);

    // Tail node and first-stage drain voltages.
    let v_tail = vcm - (vth_n + vov1);
    let vd1 = vdd - (vth_p + vov3); // M3 diode-connected
    let vd2 = vdd - (vth_p + vov6); // gate of M6

    let mut failures: Vec<(String, Real)> = Vec::new();
    let mut check = |device: &str, vds: Real, vov: Real| {
        let margin = vds - vov;
        if margin < 0.0 {
            failures.push((device.to_string(), margin));
        }
    };
    // M3 and M8 are diode-connected, saturated whenever conducting.
    check("m1", vd1 - v_tail, vov1);
    check("m2", vd2 - v_tail, vov1);
    check("m4", vth_p + vov6, vov3);
    check("m5", v_tail, vov5);
    check("m6", vdd - vout, vov6);
    check("m7", vout, vov7);

    let widths = [w12, w12, w34, w34, w58, w6, w7, w58];
    let area = area_fitness(&widths, &[l; 8])?;

    Ok(PerformanceReport {
        gain_db,
        f3db_hz: f3db,
        ugb_hz: ugb,
        pm_degrees: pm,
        sr_volts_per_second: sr,
        power_watts: power,
        noise_v_per_sqrt_hz: noise,
        area_m2: area,
        saturation_ok: failures.is_empty(),
        saturation_failures: failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (ProblemSpec, TechnologyCard) {
        (ProblemSpec::two_stage_65n(), TechnologyCard::generic_65n())
    }

    fn position() -> Vec<Real> {
        // A hand-checked feasible-region neighborhood sizing.
        vec![1.2e-6, 600e-9, 1.2e-6, 400e-9, 240e-9, 30e-6]
    }

    #[test]
    fn report_area_matches_area_fitness() {
        let (spec, tech) = setup();
        let p = position();
        let report = evaluate_two_stage(&p, &spec, &tech).unwrap();
        let widths = [p[0], p[0], p[1], p[1], p[2], p[3], p[4], p[2]];
        let area = area_fitness(&widths, &[tech.l_fixed_meters; 8]).unwrap();
        assert_eq!(report.area_m2, area);
    }

    #[test]
    fn doubling_cc_halves_ugb_and_sr() {
        let (mut spec, tech) = setup();
        let p = position();
        let base = evaluate_two_stage(&p, &spec, &tech).unwrap();
        spec.cc_farads = Some(2.0 * spec.cc());
        let doubled = evaluate_two_stage(&p, &spec, &tech).unwrap();
        assert!((doubled.ugb_hz - base.ugb_hz / 2.0).abs() / base.ugb_hz < 1e-12);
        assert!(
            (doubled.sr_volts_per_second - base.sr_volts_per_second / 2.0).abs()
                / base.sr_volts_per_second
                < 1e-12
        );
    }

    #[test]
    fn increasing_ibias_increases_power_and_sr() {
        let (spec, tech) = setup();
        let mut p = position();
        let base = evaluate_two_stage(&p, &spec, &tech).unwrap();
        p[5] *= 1.5;
        let more = evaluate_two_stage(&p, &spec, &tech).unwrap();
        assert!(more.power_watts > base.power_watts);
        assert!(more.sr_volts_per_second > base.sr_volts_per_second);
    }

    #[test]
    fn zero_width_is_contract_violation() {
        let (spec, tech) = setup();
        let mut p = position();
        p[0] = 0.0;
        assert!(evaluate_two_stage(&p, &spec, &tech).is_err());
    }

    #[test]
    fn wrong_dimension_is_contract_violation() {
        let (spec, tech) = setup();
        assert!(evaluate_two_stage(&[1e-6; 5], &spec, &tech).is_err());
    }

    #[test]
    fn evaluation_is_pure() {
        let (spec, tech) = setup();
        let p = position();
        let a = evaluate_two_stage(&p, &spec, &tech).unwrap();
        let b = evaluate_two_stage(&p, &spec, &tech).unwrap();
        assert_eq!(a, b);
    }
}
