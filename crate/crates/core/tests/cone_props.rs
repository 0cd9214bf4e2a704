mod common;

use conebound::cone::{
    cone_contains, min_enclosing_cone, min_enclosing_cone_with, plane_distance, FitOptions,
};
use conebound::Vector;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::{brute_force_cap, gaussian_vector, random_cluster, random_rotation};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn fitted_cone_is_sound_and_minimal(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let o = gaussian_vector(&mut rng, 3);
        let pts = random_cluster(&mut rng, &o);
        let cone = min_enclosing_cone(&pts, &o).unwrap();
        for p in &pts {
            prop_assert!(cone_contains(&cone, p).unwrap());
        }
        let dirs: Vec<Vector> = pts.iter().map(|p| (p - &o).normalize()).collect();
        let (_, width) = brute_force_cap(&dirs);
        prop_assert!((cone.width - width).abs() < 1e-9);
    }

    #[test]
    fn width_is_invariant_under_rigid_motions_and_scaling(seed in any::<u64>(), lambda in 1e-3..1e3f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let o = gaussian_vector(&mut rng, 3);
        let pts = random_cluster(&mut rng, &o);
        let base = min_enclosing_cone(&pts, &o).unwrap();
        let q = random_rotation(&mut rng, 3);
        let rotated: Vec<Vector> = pts.iter().map(|p| &o + &q * (p - &o)).collect();
        let scaled: Vec<Vector> = pts.iter().map(|p| &o + (p - &o) * lambda).collect();
        prop_assert!((min_enclosing_cone(&rotated, &o).unwrap().width - base.width).abs() < 1e-9);
        prop_assert!((min_enclosing_cone(&scaled, &o).unwrap().width - base.width).abs() < 1e-9);
    }

    #[test]
    fn adding_a_point_never_narrows(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let o = Vector::zeros(3);
        let mut pts = random_cluster(&mut rng, &o);
        let before = min_enclosing_cone(&pts, &o).unwrap().width;
        let extra = random_cluster(&mut rng, &o).remove(0);
        pts.push(extra);
        if let Ok(after) = min_enclosing_cone(&pts, &o) {
            prop_assert!(after.width >= before - 1e-12);
        }
    }

    #[test]
    fn shuffle_seed_does_not_change_the_cone(seed in any::<u64>(), s1 in any::<u64>(), s2 in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let o = Vector::zeros(3);
        let pts = random_cluster(&mut rng, &o);
        let a = min_enclosing_cone_with(&pts, &o, FitOptions { seed: s1, ..Default::default() }).unwrap();
        let b = min_enclosing_cone_with(&pts, &o, FitOptions { seed: s2, ..Default::default() }).unwrap();
        prop_assert!((a.width - b.width).abs() < 1e-12);
    }

    #[test]
    fn plane_distance_scales_with_homothety(seed in any::<u64>(), lambda in 1e-2..1e2f64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let o = gaussian_vector(&mut rng, 3);
        let pts = random_cluster(&mut rng, &o);
        let cone = min_enclosing_cone(&pts, &o).unwrap();
        let v = cone.axis();
        let d = plane_distance(&pts, &o, &v).unwrap();
        let scaled: Vec<Vector> = pts.iter().map(|p| &o + (p - &o) * lambda).collect();
        let ds = plane_distance(&scaled, &o, &v).unwrap();
        prop_assert!((ds - lambda * d).abs() <= 1e-9 * (1.0 + lambda * d.abs()));
        prop_assert!(d > 0.0);
    }
}
