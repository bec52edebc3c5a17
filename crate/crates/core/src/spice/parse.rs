use super::SpiceError;
use crate::circuit::PerformanceReport;
use crate::Real;
use std::fmt::Write as _;

/// Scalar measurement markers, in emission order. `sat_ok` is 1 or 0;
/// per-device failures follow as `sat_fail <device> <margin>` lines.
const MARKERS: [&str; 9] = [
    "av_db", "f3db", "ugb", "pm", "sr", "power", "noise", "area", "sat_ok",
];

/// Extract `name = value` measurement lines into a performance report.
/// Every marker is required; a missing one is an error naming the metric.
pub fn parse_measurements(raw: &str) -> Result<PerformanceReport, SpiceError> {
    let mut values = [None; MARKERS.len()];
    let mut failures: Vec<(String, Real)> = Vec::new();
    for line in raw.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("sat_fail") {
            let mut parts = rest.split_whitespace();
            let device = parts.next().unwrap_or_default();
            let margin = parts.next().unwrap_or_default();
            let margin: Real = margin
                .parse()
                .map_err(|e| SpiceError::MalformedMeasurement {
                    line: line.to_string(),
                    reason: format!("{e}"),
                })?;
            failures.push((device.to_string(), margin));
            continue;
        }
        let Some((name, value)) = line.split_once('=') else {
            continue;
        };
        let name = name.trim();
        let Some(slot) = MARKERS.iter().position(|m| *m == name) else {
            continue;
        };
        let value: Real = value
            .trim()
            .parse()
            .map_err(|e| SpiceError::MalformedMeasurement {
                line: line.to_string(),
                reason: format!("{e}"),
            })?;
        values[slot] = Some(value);
    }
    let get = |marker: &'static str| -> Result<Real, SpiceError> {
        let slot = MARKERS.iter().position(|m| *m == marker).unwrap();
        values[slot].ok_or(SpiceError::MissingMeasurement { metric: marker })
    };
    Ok(PerformanceReport {
        gain_db: get("av_db")?,
        f3db_hz: get("f3db")?,
        ugb_hz: get("ugb")?,
        pm_degrees: get("pm")?,
        sr_volts_per_second: get("sr")?,
        power_watts: get("power")?,
        noise_v_per_sqrt_hz: get("noise")?,
        area_m2: get("area")?,
        saturation_ok: get("sat_ok")? != 0.0,
        saturation_failures: failures,
    })
}

/// Render a report back into marker lines; `parse_measurements` inverts
/// this exactly (shortest round-trip float formatting).
pub fn render_measurements(report: &PerformanceReport) -> String {
    let mut out = String::new();
    let scalars = [
        ("av_db", report.gain_db),
        ("f3db", report.f3db_hz),
        ("ugb", report.ugb_hz),
        ("pm", report.pm_degrees),
        ("sr", report.sr_volts_per_second),
        ("power", report.power_watts),
        ("noise", report.noise_v_per_sqrt_hz),
        ("area", report.area_m2),
        ("sat_ok", if report.saturation_ok { 1.0 } else { 0.0 }),
    ];
    for (name, value) in scalars {
        writeln!(out, "{name} = {value}").unwrap();
    }
    for (device, margin) in &report.saturation_failures {
        writeln!(out, "sat_fail {device} {margin}").unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture() -> String {
        // Values shaped like a published two-stage result row.
        "simulator banner\n\
         av_db = 21.9\n\
         f3db = 3.2e7\n\
         ugb = 4.03e8\n\
         pm = 65.2\n\
         sr = 3.33e8\n\
         power = 147e-6\n\
         noise = 51e-9\n\
         area = 2.191e-13\n\
         sat_ok = 1\n"
            .to_string()
    }

    #[test]
    fn gain_marker_is_extracted() {
        let report = parse_measurements(&fixture()).unwrap();
        assert_eq!(report.gain_db, 21.9);
        assert!(report.saturation_ok);
        assert!(report.saturation_failures.is_empty());
    }

    #[test]
    fn missing_marker_names_the_metric() {
        let raw = fixture().replace("pm = 65.2\n", "");
        match parse_measurements(&raw).unwrap_err() {
            SpiceError::MissingMeasurement { metric } => assert_eq!(metric, "pm"),
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn malformed_value_reports_the_line() {
        let raw = fixture().replace("pm = 65.2", "pm = sixty");
        match parse_measurements(&raw).unwrap_err() {
            SpiceError::MalformedMeasurement { line, .. } => assert!(line.contains("pm")),
            other => panic!("unexpected error: {other}"),
        }
    }

    #[test]
    fn render_parse_round_trip() {
        let mut report = parse_measurements(&fixture()).unwrap();
        report.saturation_ok = false;
        report.saturation_failures = vec![("m5".into(), -0.0125), ("m7".into(), -0.3)];
        let raw = render_measurements(&report);
        let back = parse_measurements(&raw).unwrap();
        assert_eq!(back, report);
    }
}
