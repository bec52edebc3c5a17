//! Position-update kernels shared by the runners.
//!
//! Draw order is part of each kernel's contract (the acceptance oracles
//! replay the same seeded stream through straight-line transcriptions of
//! the update equations).

use crate::core::CoreError;
use crate::num::Scalar;
use rand::Rng;

/// Honey-bee neighborhood move: for each selected dimension, step from
/// `x_i` along its difference to the partner `x_k` with a fresh
/// uniform(-1, 1) factor per dimension. Dimensions must be given in
/// ascending order for reproducible draws.
pub fn abco_neighbor<F: Scalar, R: Rng>(
    x_i: &[F],
    x_k: &[F],
    dims: &[usize],
    rng: &mut R,
) -> Result<Vec<F>, CoreError> {
    if x_i.len() != x_k.len() {
        return Err(CoreError::DimensionMismatch {
            expected: x_i.len(),
            got: x_k.len(),
        });
    }
    if dims.is_empty() || dims.iter().any(|&d| d >= x_i.len()) {
        return Err(CoreError::InvalidParameter(
            "neighbor update needs a non-empty in-range dimension set".into(),
        ));
    }
    let mut v = x_i.to_vec();
    for &d in dims {
        let u: F = rng.gen_range(-F::one()..F::one());
        v[d] = x_i[d] + u * (x_i[d] - x_k[d]);
    }
    Ok(v)
}

/// Single-point crossover: the first `cut` genes come from `p1`, the rest
/// from `p2`. `cut` must lie in `1..D` so both parents contribute.
pub fn single_point_crossover<F: Scalar>(p1: &[F], p2: &[F], cut: usize) -> Vec<F> {
    debug_assert_eq!(p1.len(), p2.len());
    debug_assert!(cut >= 1 && cut < p1.len().max(2));
    p1.iter()
        .take(cut)
        .chain(p2.iter().skip(cut))
        .copied()
        .collect()
}

/// Mutation window around a gene value: `(upper, lower)` after clipping the
/// +/- alpha*x window to the problem box.
pub fn ga_mutation_bounds<F: Scalar>(x: F, alpha: F, ub: F, lb: F) -> (F, F) {
    let ub_alpha = x + alpha * x;
    let lb_alpha = x - alpha * x;
    (ub.min(ub_alpha), lb.max(lb_alpha))
}

/// One (A, C) coefficient pair; draws r1 then r2 uniformly from [0, 1).
pub fn gwo_coefficients<F: Scalar, R: Rng>(a: F, rng: &mut R) -> (F, F) {
    let two = F::from_f64(2.0).unwrap();
    let r1: F = rng.gen_range(F::zero()..F::one());
    let r2: F = rng.gen_range(F::zero()..F::one());
    (two * a * r1 - a, two * r2)
}

/// Grey-wolf position update towards the three leaders.
///
/// Per dimension, fresh (A, C) pairs are drawn for alpha, beta, and delta in
/// that order; the new coordinate is the mean of the three leader-relative
/// moves.
pub fn gwo_position_update<F: Scalar, R: Rng>(
    x: &[F],
    x_alpha: &[F],
    x_beta: &[F],
    x_delta: &[F],
    a: F,
    rng: &mut R,
) -> Result<Vec<F>, CoreError> {
    let dim = x.len();
    for leader in [x_alpha, x_beta, x_delta] {
        if leader.len() != dim {
            return Err(CoreError::DimensionMismatch {
                expected: dim,
                got: leader.len(),
            });
        }
    }
    let three = F::from_f64(3.0).unwrap();
    let mut out = Vec::with_capacity(dim);
    for d in 0..dim {
        let mut sum = F::zero();
        for leader in [x_alpha, x_beta, x_delta] {
            let (coef_a, coef_c) = gwo_coefficients(a, rng);
            let dist = (coef_c * leader[d] - x[d]).abs();
            sum = sum + leader[d] - dist * coef_a;
        }
        out.push(sum / three);
    }
    Ok(out)
}

/// Standard PSO velocity/position update with per-dimension fresh r1, r2
/// (drawn in that order from [0, 1)). Returns (velocity, position).
#[allow(clippy::too_many_arguments)]
pub fn pso_update<F: Scalar, R: Rng>(
    x: &[F],
    v: &[F],
    pbest: &[F],
    gbest: &[F],
    w: F,
    c1: F,
    c2: F,
    rng: &mut R,
) -> (Vec<F>, Vec<F>) {
    debug_assert!(v.len() == x.len() && pbest.len() == x.len() && gbest.len() == x.len());
    let mut new_v = Vec::with_capacity(x.len());
    let mut new_x = Vec::with_capacity(x.len());
    for d in 0..x.len() {
        let r1: F = rng.gen_range(F::zero()..F::one());
        let r2: F = rng.gen_range(F::zero()..F::one());
        let vel = w * v[d] + c1 * r1 * (pbest[d] - x[d]) + c2 * r2 * (gbest[d] - x[d]);
        new_v.push(vel);
        new_x.push(x[d] + vel);
    }
    (new_v, new_x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::spawn_rng_stream;

    #[test]
    fn neighbor_zero_difference_is_identity() {
        let mut rng = spawn_rng_stream(1, 0);
        let v = abco_neighbor(&[4.0, 8.0], &[4.0, 8.0], &[0, 1], &mut rng).unwrap();
        assert_eq!(v, vec![4.0, 8.0]);
    }

    #[test]
    fn neighbor_untouched_dimensions_preserved() {
        let mut rng = spawn_rng_stream(1, 0);
        let v = abco_neighbor(&[4.0, 8.0], &[2.0, 6.0], &[1], &mut rng).unwrap();
        assert_eq!(v[0], 4.0);
        // v[1] = 8 + u*2, u in (-1, 1)
        assert!(v[1] > 6.0 && v[1] < 10.0);
    }

    #[test]
    fn neighbor_rejects_empty_dims() {
        let mut rng = spawn_rng_stream(1, 0);
        assert!(abco_neighbor::<f64, _>(&[4.0], &[2.0], &[], &mut rng).is_err());
    }

    #[test]
    fn crossover_after_index_one() {
        let child = single_point_crossover(&[1.0, 2.0, 3.0, 4.0], &[9.0, 8.0, 7.0, 6.0], 2);
        assert_eq!(child, vec![1.0, 2.0, 7.0, 6.0]);
    }

    #[test]
    fn crossover_of_identical_parents() {
        let p = [1.0, 2.0, 3.0];
        for cut in 1..3 {
            assert_eq!(single_point_crossover(&p, &p, cut), p.to_vec());
        }
    }

    #[test]
    fn mutation_bounds_direct() {
        assert_eq!(ga_mutation_bounds(100.0, 0.1, 200.0, 2.0), (110.0, 90.0));
    }

    #[test]
    fn mutation_bounds_clipped_to_box() {
        assert_eq!(ga_mutation_bounds(100.0, 1.5, 200.0, 2.0), (200.0, 2.0));
    }

    #[test]
    fn mutation_bounds_zero_alpha_collapses() {
        assert_eq!(ga_mutation_bounds(100.0, 0.0, 200.0, 2.0), (100.0, 100.0));
    }

    #[test]
    fn gwo_coefficient_ranges() {
        let mut rng = spawn_rng_stream(3, 0);
        for _ in 0..1000 {
            let (a, c) = gwo_coefficients(2.0, &mut rng);
            assert!((-2.0..=2.0).contains(&a));
            assert!((0.0..=2.0).contains(&c));
        }
        let (a, _) = gwo_coefficients(0.0, &mut rng);
        assert_eq!(a, 0.0);
    }

    #[test]
    fn gwo_fixed_point_when_agents_coincide_and_a_zero() {
        let x: [f64; 3] = [1.5, -2.0, 0.25];
        let mut rng = spawn_rng_stream(4, 0);
        // a = 0 forces A = 0; with all leaders equal to x, the update is the
        // mean of the leaders themselves.
        let out = gwo_position_update(&x, &x, &x, &x, 0.0, &mut rng).unwrap();
        for (o, e) in out.iter().zip(&x) {
            assert!((o - e).abs() < 1e-15);
        }
    }

    #[test]
    fn pso_stationary_particle() {
        let x = [1.0, -1.0];
        let v = [0.0, 0.0];
        let mut rng = spawn_rng_stream(5, 0);
        let (nv, nx) = pso_update(&x, &v, &x, &x, 0.7, 1.7, 1.7, &mut rng);
        assert_eq!(nv, vec![0.0, 0.0]);
        assert_eq!(nx, x.to_vec());
    }

    #[test]
    fn pso_hand_computed_update() {
        // v' = 0.5*1 + 1.7*0.5*(2-0) + 1.7*0.5*(4-0) = 5.6 when r1 = r2 = 0.5
        struct HalfRng;
        impl rand::RngCore for HalfRng {
            fn next_u32(&mut self) -> u32 {
                u32::MAX / 2
            }
            fn next_u64(&mut self) -> u64 {
                u64::MAX / 2
            }
            fn fill_bytes(&mut self, dest: &mut [u8]) {
                dest.fill(0x7f);
            }
            fn try_fill_bytes(&mut self, dest: &mut [u8]) -> Result<(), rand::Error> {
                self.fill_bytes(dest);
                Ok(())
            }
        }
        let (nv, nx) = pso_update(
            &[0.0f64],
            &[1.0],
            &[2.0],
            &[4.0],
            0.5,
            1.7,
            1.7,
            &mut HalfRng,
        );
        assert!((nv[0] - 5.6).abs() < 1e-6);
        assert!((nx[0] - 5.6).abs() < 1e-6);
    }
}
