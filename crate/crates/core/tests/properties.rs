//! Property-based invariants: embedding norms, isometry distance
//! preservation, profile bounds, and census invariance under rotation.

use equilib::equilibria::count_equilibria_2d;
use equilib::gomboc::{self, RadialBody2};
use equilib::spaces::{ChartPoint, SpaceKind};
use proptest::prelude::*;
use std::sync::Arc;

fn spherical_point() -> impl Strategy<Value = ChartPoint> {
    (-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64).prop_map(|(x, y, z)| ChartPoint::new3(x, y, z))
}

fn hyperbolic_point() -> impl Strategy<Value = ChartPoint> {
    (-0.55..0.55f64, -0.55..0.55f64, -0.55..0.55f64)
        .prop_map(|(x, y, z)| ChartPoint::new3(x, y, z))
}

proptest! {
    #[test]
    fn spherical_embedding_is_unit(p in spherical_point()) {
        let e = SpaceKind::spherical(3).embed(&p).unwrap();
        let n: f64 = e.iter().map(|v| v * v).sum();
        prop_assert!((n - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hyperbolic_embedding_is_unit_timelike(p in hyperbolic_point()) {
        let e = SpaceKind::hyperbolic(3).embed(&p).unwrap();
        let q = e[0] * e[0] + e[1] * e[1] + e[2] * e[2] - e[3] * e[3];
        prop_assert!((q + 1.0).abs() < 1e-12);
        prop_assert!(e[3] > 0.0);
    }

    #[test]
    fn centering_isometry_preserves_spherical_distance(
        p in spherical_point(),
        q in spherical_point(),
        t in spherical_point(),
    ) {
        let space = SpaceKind::spherical(3);
        let iso = space.center_isometry(&t).unwrap();
        // the central-projection chart identifies antipodes, so compare the
        // projective distance min(d, pi - d)
        let proj = |d: f64| d.min(std::f64::consts::PI - d);
        let before = proj(space.dist(&p, &q).unwrap());
        let after = proj(space.dist(&iso.apply(&p), &iso.apply(&q)).unwrap());
        prop_assert!((before - after).abs() < 1e-10, "{before} vs {after}");
    }

    #[test]
    fn centering_isometry_preserves_hyperbolic_distance(
        p in hyperbolic_point(),
        q in hyperbolic_point(),
        t in hyperbolic_point(),
    ) {
        let space = SpaceKind::hyperbolic(3);
        let iso = space.center_isometry(&t).unwrap();
        let before = space.dist(&p, &q).unwrap();
        let after = space.dist(&iso.apply(&p), &iso.apply(&q)).unwrap();
        prop_assert!((before - after).abs() < 1e-10, "{before} vs {after}");
    }

    #[test]
    fn warp_stays_in_range(c in 0.01..1.0f64, x in 0.0..1.0f64) {
        let v = gomboc::ramp(c, x).unwrap();
        prop_assert!((0.0..=1.0).contains(&v));
    }

    #[test]
    fn height_profile_is_bounded(
        c in 0.01..1.0f64,
        theta in -1.5707..1.5707f64,
        phi in 0.0..6.2831f64,
    ) {
        let a = gomboc::blend_weight(c, theta, phi);
        prop_assert!((0.0..=1.0).contains(&a));
        let rho = gomboc::height_profile(c, theta, phi);
        prop_assert!((-1.0..=1.0).contains(&rho), "rho = {rho}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn census_is_rotation_invariant(seed in 0u64..500, shift in 0.0..6.2831f64) {
        let space = SpaceKind::euclidean(2);
        let body = equilib::bodies::random_convex_2d(&space, seed, 0.3, 6).unwrap();
        let census = count_equilibria_2d(&body, 512, 1e-9).unwrap();
        let src = body.clone();
        let rotated = RadialBody2::new(
            space,
            Arc::new(move |phi: f64| src.radial(phi - shift)),
        );
        let census_rot = count_equilibria_2d(&rotated, 512, 1e-9).unwrap();
        prop_assert_eq!((census.s, census.u), (census_rot.s, census_rot.u));
        prop_assert_eq!(census.degenerate_count, census_rot.degenerate_count);
    }
}
