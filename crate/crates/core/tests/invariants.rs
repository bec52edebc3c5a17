//! Property-based invariants for the geometry and kernel layers.

use easizer::algorithms::{
    ga_alpha_schedule, gwo_a_schedule, pso_inertia_schedule, single_point_crossover,
};
use easizer::circuit::repair_into_space;
use easizer::{clamp_to_nearest_bound, Candidate, SearchSpace};
use proptest::prelude::*;

fn space_and_point() -> impl Strategy<Value = (SearchSpace, Vec<f64>)> {
    (1usize..8).prop_flat_map(|dim| {
        let bounds = prop::collection::vec((-1e3..1e3f64, 1e-9..1e3f64), dim);
        let raw = prop::collection::vec(-1e4..1e4f64, dim);
        (bounds, raw).prop_map(|(bounds, raw)| {
            let lower: Vec<f64> = bounds.iter().map(|(lo, _)| *lo).collect();
            let upper: Vec<f64> = bounds.iter().map(|(lo, span)| lo + span).collect();
            (SearchSpace::new(lower, upper).unwrap(), raw)
        })
    })
}

proptest! {
    #[test]
    fn clamp_is_idempotent_and_lands_inside((space, raw) in space_and_point()) {
        let once = clamp_to_nearest_bound(&raw, &space).unwrap();
        let twice = clamp_to_nearest_bound(&once, &space).unwrap();
        prop_assert!(space.contains(&once));
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn clamp_is_identity_on_interior_points((space, _) in space_and_point(), t in prop::collection::vec(0.0..=1.0f64, 8)) {
        let inside: Vec<f64> = (0..space.dimension())
            .map(|d| {
                let (lo, hi) = space.interval(d);
                lo + t[d] * (hi - lo)
            })
            .collect();
        let clamped = clamp_to_nearest_bound(&inside, &space).unwrap();
        prop_assert_eq!(clamped, inside);
    }

    #[test]
    fn repair_preserves_fitness_only_when_nothing_moved((space, raw) in space_and_point()) {
        let mut candidate = Candidate::unevaluated(raw);
        candidate.fitness = Some(42.0);
        candidate.feasible = true;
        let repaired = repair_into_space(&candidate, &space).unwrap();
        if repaired.position == candidate.position {
            prop_assert_eq!(repaired.fitness, Some(42.0));
        } else {
            prop_assert_eq!(repaired.fitness, None);
            prop_assert!(!repaired.feasible);
        }
        let again = repair_into_space(&repaired, &space).unwrap();
        prop_assert_eq!(again.position, repaired.position);
    }

    #[test]
    fn crossover_preserves_the_gene_multiset(
        p1 in prop::collection::vec(-1e6..1e6f64, 2..10),
        p2_seed in prop::collection::vec(-1e6..1e6f64, 10),
        cut_t in 0.0..1.0f64,
    ) {
        let p2: Vec<f64> = p2_seed.iter().take(p1.len()).copied().collect();
        let cut = 1 + ((p1.len() - 1) as f64 * cut_t) as usize % (p1.len() - 1).max(1);
        let child = single_point_crossover(&p1, &p2, cut);
        prop_assert_eq!(child.len(), p1.len());
        prop_assert_eq!(&child[..cut], &p1[..cut]);
        prop_assert_eq!(&child[cut..], &p2[cut..]);
    }

    #[test]
    fn schedules_stay_inside_their_endpoint_ranges(ite_max in 2usize..500, t in 0.0..=1.0f64) {
        let ite = 1 + ((ite_max - 1) as f64 * t) as usize;
        let alpha: f64 = ga_alpha_schedule(ite, ite_max, 0.1, 0.9).unwrap();
        prop_assert!((0.1..=0.9).contains(&alpha));
        let w: f64 = pso_inertia_schedule(ite, ite_max, 0.5, 0.8).unwrap();
        prop_assert!((0.5..=0.8).contains(&w));
        let a: f64 = gwo_a_schedule(ite, ite_max).unwrap();
        prop_assert!((0.0..=2.0).contains(&a));
    }
}
