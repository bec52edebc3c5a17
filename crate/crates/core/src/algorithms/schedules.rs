//! Iteration schedules. The ABC limit/dim and GA alpha ramps use the
//! `1 - ite/ite_max` form (they reach their minimum exactly at the final
//! iteration); the PSO inertia and GWO `a` ramps interpolate between both
//! endpoints exactly.

use crate::core::CoreError;
use crate::num::Scalar;

fn check_range(ite: usize, ite_max: usize) -> Result<(), CoreError> {
    if ite == 0 || ite > ite_max {
        return Err(CoreError::InvalidParameter(format!(
            "iteration {ite} outside 1..={ite_max}"
        )));
    }
    Ok(())
}

/// ABC limit parameter for iteration `ite`, truncated toward zero.
pub fn abco_limit_schedule(
    ite: usize,
    ite_max: usize,
    limit_min: u32,
    limit_max: u32,
) -> Result<u32, CoreError> {
    check_range(ite, ite_max)?;
    let frac = 1.0 - ite as f64 / ite_max as f64;
    let value = limit_min as f64 + frac * (limit_max - limit_min) as f64;
    Ok(value.floor() as u32)
}

/// Number of dimensions the ABC update touches at iteration `ite`.
/// Rounded up so early iterations update all dimensions, floored at 1.
pub fn abco_dim_schedule(ite: usize, ite_max: usize, dimension: usize) -> Result<usize, CoreError> {
    check_range(ite, ite_max)?;
    if dimension == 0 {
        return Err(CoreError::InvalidParameter("dimension must be >= 1".into()));
    }
    let frac = 1.0 - ite as f64 / ite_max as f64;
    let value = (dimension as f64 * frac).ceil() as usize;
    Ok(value.max(1))
}

/// GA mutation-window parameter for generation `gen`.
pub fn ga_alpha_schedule<F: Scalar>(
    gen: usize,
    gen_max: usize,
    alpha_min: F,
    alpha_max: F,
) -> Result<F, CoreError> {
    check_range(gen, gen_max)?;
    let frac = F::one() - F::from_usize(gen).unwrap() / F::from_usize(gen_max).unwrap();
    Ok(alpha_min + frac * (alpha_max - alpha_min))
}

/// PSO inertia weight: `w_max` at the first iteration, `w_min` at the last.
pub fn pso_inertia_schedule<F: Scalar>(
    ite: usize,
    ite_max: usize,
    w_min: F,
    w_max: F,
) -> Result<F, CoreError> {
    check_range(ite, ite_max)?;
    if ite_max == 1 {
        return Ok(w_max);
    }
    let frac = F::from_usize(ite - 1).unwrap() / F::from_usize(ite_max - 1).unwrap();
    Ok(w_max - frac * (w_max - w_min))
}

/// GWO coefficient `a`: 2 at the first iteration, 0 at the last.
pub fn gwo_a_schedule<F: Scalar>(ite: usize, ite_max: usize) -> Result<F, CoreError> {
    check_range(ite, ite_max)?;
    let two = F::from_f64(2.0).unwrap();
    if ite_max == 1 {
        return Ok(two);
    }
    let frac = F::from_usize(ite - 1).unwrap() / F::from_usize(ite_max - 1).unwrap();
    Ok(two * (F::one() - frac))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn limit_endpoint_is_min() {
        assert_eq!(abco_limit_schedule(300, 300, 5, 15).unwrap(), 5);
    }

    #[test]
    fn limit_midpoint() {
        assert_eq!(abco_limit_schedule(150, 300, 5, 15).unwrap(), 10);
    }

    #[test]
    fn limit_first_iteration_truncates() {
        // 5 + (299/300)*10 = 14.9667 -> 14
        assert_eq!(abco_limit_schedule(1, 300, 5, 15).unwrap(), 14);
    }

    #[test]
    fn limit_out_of_range_rejected() {
        assert!(abco_limit_schedule(0, 300, 5, 15).is_err());
        assert!(abco_limit_schedule(301, 300, 5, 15).is_err());
    }

    #[test]
    fn dim_endpoints() {
        assert_eq!(abco_dim_schedule(300, 300, 6).unwrap(), 1);
        assert_eq!(abco_dim_schedule(150, 300, 6).unwrap(), 3);
        // ceil(6 * 299/300) = ceil(5.98) = 6
        assert_eq!(abco_dim_schedule(1, 300, 6).unwrap(), 6);
    }

    #[test]
    fn dim_stays_in_range_and_monotone() {
        let mut last = usize::MAX;
        for ite in 1..=300 {
            let d = abco_dim_schedule(ite, 300, 6).unwrap();
            assert!((1..=6).contains(&d));
            assert!(d <= last);
            last = d;
        }
    }

    #[test]
    fn alpha_endpoint_and_midpoint() {
        assert!((ga_alpha_schedule::<f64>(300, 300, 0.1, 0.9).unwrap() - 0.1).abs() < 1e-15);
        assert!((ga_alpha_schedule::<f64>(150, 300, 0.1, 0.9).unwrap() - 0.5).abs() < 1e-15);
        let first: f64 = ga_alpha_schedule(1, 300, 0.1, 0.9).unwrap();
        assert!((first - (0.1 + (299.0 / 300.0) * 0.8)).abs() < 1e-12);
    }

    #[test]
    fn inertia_endpoints_and_midpoint() {
        assert_eq!(pso_inertia_schedule(1, 300, 0.5, 0.8).unwrap(), 0.8);
        assert_eq!(pso_inertia_schedule(300, 300, 0.5, 0.8).unwrap(), 0.5);
        let mid: f64 = pso_inertia_schedule(150, 299, 0.5, 0.8).unwrap();
        assert!((mid - 0.65).abs() < 1e-12);
    }

    #[test]
    fn gwo_a_endpoints() {
        assert_eq!(gwo_a_schedule::<f64>(1, 300).unwrap(), 2.0);
        assert_eq!(gwo_a_schedule::<f64>(300, 300).unwrap(), 0.0);
    }
}
