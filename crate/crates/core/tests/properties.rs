use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sphereworld::sample::{boundary_point, free_configuration, free_point, random_world};
use sphereworld::{
    tc_value, validate_path, CollarAtlas64, Mode, PunctureMap64, SamplingOptions, SphereId, SphereWorld64,
    TargetSpace, TransportedPlanner64,
};

fn world(seed: u64, n: usize, m: usize) -> (ChaCha8Rng, SphereWorld64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let w = random_world(&mut rng, n, m, 10.0);
    (rng, w)
}

fn dims() -> impl Strategy<Value = usize> {
    prop::sample::select(vec![2usize, 3, 5])
}

fn obstacle_counts() -> impl Strategy<Value = usize> {
    prop::sample::select(vec![0usize, 1, 3])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn isotopy_ends_are_identity_and_retraction(seed: u64, n in dims(), m in obstacle_counts()) {
        let (mut rng, w) = world(seed, n, m);
        let atlas = CollarAtlas64::with_default_widths(&w).unwrap();
        for _ in 0..50 {
            let y = free_point(&mut rng, &w);
            prop_assert_eq!(atlas.isotopy(&y, 0.0).unwrap(), atlas.retract(&y).unwrap());
            prop_assert!(atlas.isotopy(&y, 1.0).unwrap().distance(&y) <= 1e-12 * w.work_radius());
        }
    }

    #[test]
    fn boundary_retracts_to_half_width(seed: u64, n in dims(), m in obstacle_counts()) {
        let (mut rng, w) = world(seed, n, m);
        let atlas = CollarAtlas64::with_default_widths(&w).unwrap();
        for s in 0..=m {
            let sphere = if s == 0 { SphereId::Outer } else { SphereId::Obstacle(s - 1) };
            let y = boundary_point(&mut rng, &w, sphere);
            let clearance = w.clearance_unchecked(&atlas.retract(&y).unwrap());
            prop_assert!((clearance - 0.5 * atlas.width(sphere)).abs() <= 1e-12 * w.work_radius());
        }
    }

    #[test]
    fn retraction_lands_in_the_interior(seed: u64, n in dims(), m in obstacle_counts()) {
        let (mut rng, w) = world(seed, n, m);
        let atlas = CollarAtlas64::with_default_widths(&w).unwrap();
        let c = free_configuration(&mut rng, &w, 6, 0.5);
        let r = atlas.config_retract(&c).unwrap();
        prop_assert!(r.is_pairwise_distinct());
        for p in r.points() {
            prop_assert!(w.clearance_unchecked(p) >= 0.5 * atlas.min_width() * (1.0 - 1e-9));
        }
        for s in [0.25, 0.5, 0.75] {
            prop_assert!(atlas.config_isotopy(&c, s).unwrap().in_free_configuration_space(&w).unwrap());
        }
    }

    #[test]
    fn phi_round_trips(seed: u64, n in dims(), m in obstacle_counts()) {
        let (mut rng, w) = world(seed, n, m);
        let atlas = CollarAtlas64::with_default_widths(&w).unwrap();
        let pmap = PunctureMap64::from_atlas(&atlas).unwrap();
        for _ in 0..50 {
            let p = free_point(&mut rng, &w);
            let back = pmap.inverse(&pmap.forward(&p).unwrap()).unwrap();
            prop_assert!(back.distance(&p) <= 1e-9 * w.work_radius());
        }
    }

    #[test]
    fn transported_paths_validate(seed: u64, k in 1usize..=3, m in 0usize..=2) {
        let (mut rng, w) = world(seed, 2, m);
        let planner = TransportedPlanner64::new(&w, k, Mode::Strict, 0.2).unwrap();
        let a = free_configuration(&mut rng, &w, k, 0.3);
        let b = free_configuration(&mut rng, &w, k, 0.3);
        let path = planner.plan(&a, &b, SamplingOptions::with_samples(24)).unwrap();
        let report = validate_path(TargetSpace::World(&w), &path, Some(&a), Some(&b));
        prop_assert!(report.valid, "{:?}", report.failures);
    }

    #[test]
    fn tc_depends_only_on_parity(n in 2usize..=9, m in 0usize..=10, k in 2usize..=50) {
        prop_assert_eq!(tc_value(n, m, k).unwrap(), tc_value(n + 2, m, k).unwrap());
    }
}

#[test]
fn retraction_is_injective() {
    let (mut rng, w) = world(17, 2, 3);
    let atlas = CollarAtlas64::with_default_widths(&w).unwrap();
    let pts: Vec<_> = (0..400)
        .map(|i| {
            if i % 2 == 0 {
                free_point(&mut rng, &w)
            } else {
                boundary_point(&mut rng, &w, SphereId::Obstacle(i % 3))
            }
        })
        .collect();
    let images: Vec<_> = pts.iter().map(|p| atlas.retract(p).unwrap()).collect();
    for i in 0..pts.len() {
        for j in 0..i {
            if pts[i] != pts[j] {
                assert_ne!(images[i], images[j]);
            }
        }
    }
}

#[test]
fn phi_is_continuous_across_the_shells() {
    let (_, w) = world(23, 3, 3);
    let atlas = CollarAtlas64::with_default_widths(&w).unwrap();
    let pmap = PunctureMap64::from_atlas(&atlas).unwrap();
    let r0 = w.work_radius();
    for (ob, &big) in w.obstacles().iter().zip(pmap.influence_radii()) {
        for axis in 0..3 {
            let at = |d: f64| {
                let mut p = ob.center.clone();
                p.coords_mut()[axis] += d;
                pmap.forward(&p).unwrap()
            };
            let eps = 1e-15 * r0;
            assert!(at(big - eps).distance(&at(big + eps)) <= 1e-12 * r0);
        }
    }
}
