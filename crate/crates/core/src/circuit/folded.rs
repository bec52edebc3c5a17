//! Analytic model of the folded cascode op-amp (NMOS input pair).
//!
//! Device roles: M1/M2 NMOS input pair; M3/M4 PMOS current sources with Mbp
//! as their diode-connected bias reference; Mbn diode-connected NMOS bias
//! with M5 as the mirrored tail; M6/M7 PMOS cascodes; M8/M9 NMOS cascodes;
//! M10/M11 NMOS current sinks. Position vector:
//! [W12, W34bp, Wbn5, W67, W89, W1011, Ibias].

use super::device::{gds_at_current, gm_at_current, overdrive, BOLTZMANN};
use super::{area_fitness, CircuitError, PerformanceReport, ProblemSpec, TechnologyCard};
use crate::Real;
use std::f64::consts::PI;

/// Headroom reserved above V_ov by the (implicit) cascode bias generator.
const CASCODE_MARGIN_VOLTS: Real = 0.05;

pub fn evaluate_folded_cascode(
    position: &[Real],
    spec: &ProblemSpec,
    tech: &TechnologyCard,
) -> Result<PerformanceReport, CircuitError> {
    if position.len() != 7 {
        return Err(CircuitError::DimensionMismatch {
            expected: 7,
            got: position.len(),
        });
    }
    let names = ["w12", "w34bp", "wbn5", "w67", "w89", "w1011", "ibias"];
    for (name, &value) in names.iter().zip(position) {
        if !(value > 0.0) {
            return Err(CircuitError::NonPositiveVariable { name, value });
        }
    }
    let [w12, w34bp, wbn5, w67, w89, w1011, ibias] = [
        position[0],
        position[1],
        position[2],
        position[3],
        position[4],
        position[5],
        position[6],
    ];
    let l = tech.l_fixed_meters;
    let vdd = tech.vdd_volts;
    let cl = spec.cl_farads;

    // Matched mirrors: tail copies Ibias via Mbn, each PMOS source copies
    // Ibias via Mbp. The input branch takes half the tail, the rest folds
    // into the cascode branch.
    let i_tail = ibias;
    let i_half = i_tail / 2.0;
    let i_source = ibias;
    let i_branch = i_source - i_half;

    let gm1 = gm_at_current(i_half, tech.kp_n, w12 / l);
    let gm3 = gm_at_current(i_source, tech.kp_p, w34bp / l);
    let gm6 = gm_at_current(i_branch, tech.kp_p, w67 / l);
    let gm8 = gm_at_current(i_branch, tech.kp_n, w89 / l);
    let gm10 = gm_at_current(i_branch, tech.kp_n, w1011 / l);

    let gds2 = gds_at_current(i_half, tech.lambda_n);
    let gds4 = gds_at_current(i_source, tech.lambda_p);
    let gds6 = gds_at_current(i_branch, tech.lambda_p);
    let gds8 = gds_at_current(i_branch, tech.lambda_n);
    let gds10 = gds_at_current(i_branch, tech.lambda_n);

    // Cascoded output resistances, up through M6 and down through M8.
    let r_up = gm6 / gds6 / (gds4 + gds2);
    let r_down = gm8 / gds8 / gds10;
    let r_out = r_up * r_down / (r_up + r_down);
    let av = gm1 * r_out;
    let gain_db = 20.0 * av.log10();

    let ugb = gm1 / (2.0 * PI * cl);
    let f3db = ugb / av;
    // Non-dominant pole at the folding node: cascode transconductance
    // against the gate/junction parasitics hanging there.
    let c_fold = tech.cox * l * (w12 + w34bp + w67);
    let p2 = gm6 / (2.0 * PI * c_fold);
    let pm = 90.0 - (ugb / p2).atan().to_degrees();

    let sr = i_tail.min(i_branch) / cl;
    let power = vdd * (ibias + 2.0 * i_source);

    // Input-referred thermal noise: input pair plus the top sources and
    // bottom sinks, which inject current noise straight into the branch.
    let kt16_3 = 16.0 * BOLTZMANN * tech.temperature_kelvin / 3.0;
    let noise = (kt16_3 / gm1 * (1.0 + (gm3 + gm10) / gm1)).sqrt();

    // Saturation at the assumed DC point: mid common-mode in, mid-rail
    // out, cascode gates biased to leave CASCODE_MARGIN_VOLTS of slack on
    // the source/sink devices.
    let vcm = 0.5 * (spec.icmr_min_volts + spec.icmr_max_volts);
    let vout = 0.5 * vdd;
    let delta = CASCODE_MARGIN_VOLTS;

    let vov1 = overdrive(i_half, tech.kp_n, w12 / l);
    let vov3 = overdrive(i_source, tech.kp_p, w34bp / l);
    let vov5 = overdrive(i_tail, tech.kp_n, wbn5 / l);
    let vov6 = overdrive(i_branch, tech.kp_p, w67 / l);
    let vov8 = overdrive(i_branch, tech.kp_n, w89 / l);
    let vov10 = overdrive(i_branch, tech.kp_n, w1011 / l);

    let v_tail = vcm - (tech.vth_n + vov1);
    let v_fold_top = vdd - (vov3 + delta); // input-pair drains
    let v_fold_bottom = vov10 + delta; // NMOS-cascode sources

    let mut failures: Vec<(String, Real)> = Vec::new();
    let mut check = |device: &str, vds: Real, vov: Real| {
        let margin = vds - vov;
        if margin < 0.0 {
            failures.push((device.to_string(), margin));
        }
    };
    // Mbp and Mbn are diode-connected, saturated whenever conducting.
    check("m1", v_fold_top - v_tail, vov1);
    check("m2", v_fold_top - v_tail, vov1);
    check("m3", vov3 + delta, vov3);
    check("m4", vov3 + delta, vov3);
    check("m5", v_tail, vov5);
    check("m6", v_fold_top - vout, vov6);
    check("m7", v_fold_top - vout, vov6);
    check("m8", vout - v_fold_bottom, vov8);
    check("m9", vout - v_fold_bottom, vov8);
    check("m10", vov10 + delta, vov10);
    check("m11", vov10 + delta, vov10);

    let widths = [
        w12, w12, w34bp, w34bp, w34bp, wbn5, wbn5, w67, w67, w89, w89, w1011, w1011,
    ];
    let area = area_fitness(&widths, &[l; 13])?;

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
        (
            ProblemSpec::folded_cascode_180n(),
            TechnologyCard::generic_180n(),
        )
    }

    fn position() -> Vec<Real> {
        vec![8.0e-6, 3.5e-6, 1.2e-6, 800e-9, 400e-9, 6.0e-6, 60e-6]
    }

    #[test]
    fn report_area_matches_area_fitness() {
        let (spec, tech) = setup();
        let p = position();
        let report = evaluate_folded_cascode(&p, &spec, &tech).unwrap();
        let widths = [
            p[0], p[0], p[1], p[1], p[1], p[2], p[2], p[3], p[3], p[4], p[4], p[5], p[5],
        ];
        let area = area_fitness(&widths, &[tech.l_fixed_meters; 13]).unwrap();
        assert_eq!(report.area_m2, area);
    }

    #[test]
    fn scaling_widths_and_current_preserves_overdrives() {
        let (spec, tech) = setup();
        let p = position();
        let base = evaluate_folded_cascode(&p, &spec, &tech).unwrap();
        let scaled: Vec<Real> = p.iter().map(|v| v * 3.0).collect();
        let report = evaluate_folded_cascode(&scaled, &spec, &tech).unwrap();
        // Overdrives unchanged means the saturation verdict is unchanged.
        assert_eq!(base.saturation_ok, report.saturation_ok);
        assert_eq!(base.saturation_failures, report.saturation_failures);
    }

    #[test]
    fn increasing_ibias_increases_power_and_sr() {
        let (spec, tech) = setup();
        let mut p = position();
        let base = evaluate_folded_cascode(&p, &spec, &tech).unwrap();
        p[6] *= 1.5;
        let more = evaluate_folded_cascode(&p, &spec, &tech).unwrap();
        assert!(more.power_watts > base.power_watts);
        assert!(more.sr_volts_per_second > base.sr_volts_per_second);
    }

    #[test]
    fn reported_sizing_reproduces_published_area() {
        // Widths in nm for one published sizing of this topology; its
        // reported total gate area is 8.014 square microns.
        let (spec, tech) = setup();
        let nm = 1e-9;
        let p = vec![
            8686.0 * nm,
            3417.0 * nm,
            1118.0 * nm,
            805.0 * nm,
            367.0 * nm,
            6156.0 * nm,
            60e-6,
        ];
        let report = evaluate_folded_cascode(&p, &spec, &tech).unwrap();
        assert!((report.area_m2 * 1e12 - 8.014).abs() < 0.005);
    }

    #[test]
    fn zero_width_is_contract_violation() {
        let (spec, tech) = setup();
        let mut p = position();
        p[3] = 0.0;
        assert!(evaluate_folded_cascode(&p, &spec, &tech).is_err());
    }

    #[test]
    fn wrong_dimension_is_contract_violation() {
        let (spec, tech) = setup();
        assert!(evaluate_folded_cascode(&[1e-6; 6], &spec, &tech).is_err());
    }

    #[test]
    fn evaluation_is_pure() {
        let (spec, tech) = setup();
        let p = position();
        let a = evaluate_folded_cascode(&p, &spec, &tech).unwrap();
        let b = evaluate_folded_cascode(&p, &spec, &tech).unwrap();
        assert_eq!(a, b);
    }
}
