use super::CircuitError;
use crate::Real;
use serde::{Deserialize, Serialize};

/// Device-model constants of a technology node.
///
/// The shipped cards carry textbook-typical square-law constants; all values
/// are overridable from the structured config file. They are generic stand-ins,
/// not foundry data.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TechnologyCard {
    pub name: String,
    /// Supply voltage, volts.
    pub vdd_volts: Real,
    /// Fixed channel length for every transistor, meters.
    pub l_fixed_meters: Real,
    /// NMOS process transconductance (mu_n * Cox), A/V^2.
    pub kp_n: Real,
    /// PMOS process transconductance (mu_p * Cox), A/V^2.
    pub kp_p: Real,
    /// NMOS threshold voltage, volts (positive).
    pub vth_n: Real,
    /// PMOS threshold voltage, volts (negative).
    pub vth_p: Real,
    /// NMOS channel-length modulation, 1/V.
    pub lambda_n: Real,
    /// PMOS channel-length modulation, 1/V.
    pub lambda_p: Real,
    /// Gate-oxide capacitance per area, F/m^2.
    pub cox: Real,
    pub temperature_kelvin: Real,
}

impl TechnologyCard {
    /// Generic 65 nm-class card: 1.1 V supply, 60 nm channel length.
    pub fn generic_65n() -> Self {
        Self {
            name: "generic-65n".into(),
            vdd_volts: 1.1,
            l_fixed_meters: 60e-9,
            kp_n: 50e-6,
            kp_p: 600e-6,
            vth_n: 0.25,
            vth_p: -0.25,
            lambda_n: 1.5,
            lambda_p: 1.5,
            cox: 12e-3,
            temperature_kelvin: 300.0,
        }
    }

    /// Generic 180 nm-class card: 1.8 V supply, 180 nm channel length.
    pub fn generic_180n() -> Self {
        Self {
            name: "generic-180n".into(),
            vdd_volts: 1.8,
            l_fixed_meters: 180e-9,
            kp_n: 300e-6,
            kp_p: 100e-6,
            vth_n: 0.40,
            vth_p: -0.42,
            lambda_n: 0.08,
            lambda_p: 0.10,
            cox: 8.5e-3,
            temperature_kelvin: 300.0,
        }
    }

    pub fn validate(&self) -> Result<(), CircuitError> {
        let positives = [
            ("vdd_volts", self.vdd_volts),
            ("l_fixed_meters", self.l_fixed_meters),
            ("kp_n", self.kp_n),
            ("kp_p", self.kp_p),
            ("vth_n", self.vth_n),
            ("lambda_n", self.lambda_n),
            ("lambda_p", self.lambda_p),
            ("cox", self.cox),
            ("temperature_kelvin", self.temperature_kelvin),
        ];
        for (name, value) in positives {
            if !(value > 0.0) {
                return Err(CircuitError::BadTechnology(format!(
                    "{name} must be strictly positive, got {value}"
                )));
            }
        }
        if !(self.vth_p < 0.0) {
            return Err(CircuitError::BadTechnology(format!(
                "vth_p must be negative, got {}",
                self.vth_p
            )));
        }
        if self.vth_n >= self.vdd_volts || self.vth_p.abs() >= self.vdd_volts {
            return Err(CircuitError::BadTechnology(
                "threshold magnitudes must be below the supply".into(),
            ));
        }
        Ok(())
    }
}
