use super::SpiceError;
use crate::circuit::{ProblemSpec, TechnologyCard, Topology};
use crate::Real;
use std::path::Path;

/// A netlist template: raw text with `@NAME@` placeholders, one per
/// decision variable plus the shared supply/length/capacitor slots.
#[derive(Debug, Clone)]
pub struct NetlistTemplate {
    pub topology: Topology,
    text: String,
}

/// Placeholder names of the decision variables, position-vector order.
fn variable_placeholders(topology: Topology) -> &'static [&'static str] {
    match topology {
        Topology::TwoStageMiller => &["W12_NM", "W34_NM", "W58_NM", "W6_NM", "W7_NM", "IBIAS_A"],
        Topology::FoldedCascode => &[
            "W12_NM", "W34BP_NM", "WBN5_NM", "W67_NM", "W89_NM", "W1011_NM", "IBIAS_A",
        ],
    }
}

impl NetlistTemplate {
    /// Wrap template text, checking that every decision-variable
    /// placeholder occurs exactly once.
    pub fn new(topology: Topology, text: String) -> Result<Self, SpiceError> {
        for name in variable_placeholders(topology) {
            let token = format!("@{name}@");
            let count = text.matches(&token).count();
            if count != 1 {
                return Err(SpiceError::BadPlaceholder {
                    topology,
                    placeholder: token,
                    count,
                });
            }
        }
        Ok(Self { topology, text })
    }

    /// The template shipped with the crate for a topology.
    pub fn builtin(topology: Topology) -> Self {
        let text = match topology {
            Topology::TwoStageMiller => include_str!("../../templates/two_stage.sp"),
            Topology::FoldedCascode => include_str!("../../templates/folded_cascode.sp"),
        };
        Self::new(topology, text.to_string()).expect("shipped template is well-formed")
    }
}

/// Render a width in nanometers without losing the internal value: shortest
/// round-trip decimal, snapped to the integer grid when the conversion noise
/// is below a thousandth of a nanometer.
fn render_nm(width_meters: Real) -> String {
    let nm = width_meters * 1e9;
    let snapped = nm.round();
    if (nm - snapped).abs() < 1e-3 && snapped != 0.0 {
        format!("{snapped:.0}")
    } else {
        format!("{nm}")
    }
}

/// Substitute a position vector into the template. Deterministic: equal
/// inputs produce byte-identical text.
pub fn emit_netlist(
    position: &[Real],
    template: &NetlistTemplate,
    spec: &ProblemSpec,
    tech: &TechnologyCard,
    model_card: &Path,
) -> Result<String, SpiceError> {
    let names = variable_placeholders(template.topology);
    if position.len() != names.len() {
        return Err(SpiceError::DimensionMismatch {
            expected: names.len(),
            got: position.len(),
        });
    }
    let mut text = template.text.clone();
    let mut put = |name: &str, value: String| -> Result<(), SpiceError> {
        let token = format!("@{name}@");
        if !text.contains(&token) {
            return Err(SpiceError::BadPlaceholder {
                topology: template.topology,
                placeholder: token,
                count: 0,
            });
        }
        text = text.replace(&token, &value);
        Ok(())
    };
    for (name, &value) in names.iter().zip(position) {
        if name.ends_with("_NM") {
            put(name, render_nm(value))?;
        } else {
            put(name, format!("{value}"))?;
        }
    }
    put("MODEL_CARD", model_card.display().to_string())?;
    put("L_NM", render_nm(tech.l_fixed_meters))?;
    put("VDD_V", format!("{}", tech.vdd_volts))?;
    put("CL_F", format!("{}", spec.cl_farads))?;
    let vcm = 0.5 * (spec.icmr_min_volts + spec.icmr_max_volts);
    put("VCM_V", format!("{vcm}"))?;
    match template.topology {
        Topology::TwoStageMiller => {
            put("CC_F", format!("{}", spec.cc()))?;
        }
        Topology::FoldedCascode => {
            // Cascode gate biases leave one overdrive-plus-margin of room;
            // a coarse mid-stack choice is enough for the template.
            put("VCASCP_V", format!("{}", tech.vdd_volts - 0.6))?;
            put("VCASCN_V", "0.6".to_string())?;
        }
    }
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_stage() -> (ProblemSpec, TechnologyCard, NetlistTemplate) {
        (
            ProblemSpec::two_stage_65n(),
            TechnologyCard::generic_65n(),
            NetlistTemplate::builtin(Topology::TwoStageMiller),
        )
    }

    #[test]
    fn builtin_templates_validate() {
        NetlistTemplate::builtin(Topology::TwoStageMiller);
        NetlistTemplate::builtin(Topology::FoldedCascode);
    }

    #[test]
    fn duplicate_placeholder_rejected() {
        let text = "w @W12_NM@ @W12_NM@ @W34_NM@ @W58_NM@ @W6_NM@ @W7_NM@ @IBIAS_A@";
        assert!(NetlistTemplate::new(Topology::TwoStageMiller, text.into()).is_err());
    }

    #[test]
    fn emission_is_deterministic() {
        let (spec, tech, template) = two_stage();
        let p = [700e-9, 360e-9, 1.2e-6, 1.1e-6, 240e-9, 20e-6];
        let a = emit_netlist(&p, &template, &spec, &tech, Path::new("cards.lib")).unwrap();
        let b = emit_netlist(&p, &template, &spec, &tech, Path::new("cards.lib")).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn integer_nm_widths_render_exactly_once() {
        // A published sizing: the 1114 nm output-PMOS width must appear as
        // the literal token `1114n`, exactly once.
        let (spec, tech, template) = two_stage();
        let nm = 1e-9;
        let p = [
            697.0 * nm,
            356.0 * nm,
            146.0 * nm,
            1114.0 * nm,
            720.0 * nm,
            20e-6,
        ];
        let text = emit_netlist(&p, &template, &spec, &tech, Path::new("cards.lib")).unwrap();
        assert_eq!(text.matches("1114n").count(), 1);
        assert_eq!(text.matches("697n").count(), 1);
    }

    #[test]
    fn wrong_dimension_rejected() {
        let (spec, tech, template) = two_stage();
        let p = [1e-6; 5];
        assert!(emit_netlist(&p, &template, &spec, &tech, Path::new("x")).is_err());
    }

    #[test]
    fn no_unfilled_placeholders_remain() {
        let (spec, tech, template) = two_stage();
        let p = [700e-9, 360e-9, 1.2e-6, 1.1e-6, 240e-9, 20e-6];
        let text = emit_netlist(&p, &template, &spec, &tech, Path::new("cards.lib")).unwrap();
        assert!(!text.contains('@'), "unfilled placeholder in:\n{text}");

        let spec = ProblemSpec::folded_cascode_180n();
        let tech = TechnologyCard::generic_180n();
        let template = NetlistTemplate::builtin(Topology::FoldedCascode);
        let p = [8e-6, 3.4e-6, 1.1e-6, 800e-9, 370e-9, 6.2e-6, 60e-6];
        let text = emit_netlist(&p, &template, &spec, &tech, Path::new("cards.lib")).unwrap();
        assert!(!text.contains('@'), "unfilled placeholder in:\n{text}");
    }
}
