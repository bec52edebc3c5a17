//! First-order square-law MOSFET model with channel-length modulation.
//!
//! All quantities are magnitudes: PMOS devices are handled by passing
//! |V_SG|, |V_SD|, and the p-type process constants.

use crate::Real;

/// Boltzmann constant, J/K.
pub const BOLTZMANN: Real = 1.380649e-23;

/// Saturation drain current: 1/2 * kp * (W/L) * (Vgs - Vth)^2 * (1 + lambda*Vds).
pub fn drain_current(
    kp: Real,
    w_over_l: Real,
    vgs: Real,
    vth: Real,
    lambda: Real,
    vds: Real,
) -> Real {
    let vov = vgs - vth;
    if vov <= 0.0 {
        return 0.0;
    }
    0.5 * kp * w_over_l * vov * vov * (1.0 + lambda * vds)
}

/// dId/dVgs of the saturation current at the given operating point.
pub fn transconductance(
    kp: Real,
    w_over_l: Real,
    vgs: Real,
    vth: Real,
    lambda: Real,
    vds: Real,
) -> Real {
    let vov = vgs - vth;
    if vov <= 0.0 {
        return 0.0;
    }
    kp * w_over_l * vov * (1.0 + lambda * vds)
}

/// dId/dVds of the saturation current at the given operating point.
pub fn output_conductance(kp: Real, w_over_l: Real, vgs: Real, vth: Real, lambda: Real) -> Real {
    let vov = vgs - vth;
    if vov <= 0.0 {
        return 0.0;
    }
    0.5 * kp * w_over_l * vov * vov * lambda
}

/// Overdrive voltage needed to carry `id` (channel-length modulation
/// neglected): Vov = sqrt(2*Id / (kp * W/L)).
pub fn overdrive(id: Real, kp: Real, w_over_l: Real) -> Real {
    (2.0 * id / (kp * w_over_l)).sqrt()
}

/// Small-signal transconductance at drain current `id`, the common
/// sizing-equation form gm = sqrt(2 * kp * (W/L) * Id).
pub fn gm_at_current(id: Real, kp: Real, w_over_l: Real) -> Real {
    (2.0 * kp * w_over_l * id).sqrt()
}

/// Small-signal output conductance gds = lambda * Id.
pub fn gds_at_current(id: Real, lambda: Real) -> Real {
    lambda * id
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gm_forms_agree_without_lambda() {
        let (kp, wl) = (3e-4, 10.0);
        let vov: Real = 0.2;
        let id = 0.5 * kp * wl * vov * vov;
        let gm_sizing = gm_at_current(id, kp, wl);
        let gm_deriv = transconductance(kp, wl, vov + 0.4, 0.4, 0.0, 0.5);
        assert!((gm_sizing - gm_deriv).abs() / gm_deriv < 1e-12);
    }

    #[test]
    fn cutoff_yields_zero() {
        assert_eq!(drain_current(3e-4, 10.0, 0.3, 0.4, 0.1, 0.5), 0.0);
        assert_eq!(transconductance(3e-4, 10.0, 0.3, 0.4, 0.1, 0.5), 0.0);
    }

    #[test]
    fn overdrive_inverts_current() {
        let (kp, wl) = (1e-4, 25.0);
        let vov = 0.15;
        let id = 0.5 * kp * wl * vov * vov;
        assert!((overdrive(id, kp, wl) - vov).abs() < 1e-12);
    }
}
