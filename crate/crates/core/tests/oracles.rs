//! Cross-checks of analytic formulas against independent numerical oracles:
//! embedded-surface area elements, closed-form inner radial integrals,
//! curvature of ellipsoids, and centroids of bodies with known centers.

use equilib::equilibria::{find_equilibria, gaussian_curvature};
use equilib::gomboc::{GombocParams, RadialBody, build_body};
use equilib::integrate::{self, QuadratureSpec, RadialPath};
use equilib::spaces::{ChartPoint, SpaceKind};
use std::f64::consts::FRAC_PI_2;
use std::sync::Arc;

/// Area element of an embedded chart surface `f: R^2 -> R^n` from numerical
/// partial derivatives, `sqrt(E G - F^2)` with the given ambient metric
/// signs (the last component carries `sign[n-1]`).
fn embedded_area_element(f: &dyn Fn(f64, f64) -> Vec<f64>, signs: &[f64], x: f64, y: f64) -> f64 {
    let h = 1e-6;
    let fx: Vec<f64> = f(x + h, y)
        .iter()
        .zip(f(x - h, y).iter())
        .map(|(a, b)| (a - b) / (2.0 * h))
        .collect();
    let fy: Vec<f64> = f(x, y + h)
        .iter()
        .zip(f(x, y - h).iter())
        .map(|(a, b)| (a - b) / (2.0 * h))
        .collect();
    let dot = |u: &[f64], v: &[f64]| -> f64 {
        u.iter().zip(v).zip(signs).map(|((a, b), s)| s * a * b).sum()
    };
    let (e, ff, g) = (dot(&fx, &fx), dot(&fx, &fy), dot(&fy, &fy));
    (e * g - ff * ff).sqrt()
}

#[test]
fn spherical_2d_volume_weight_matches_surface_oracle() {
    let space = SpaceKind::spherical(2);
    let f = |x: f64, y: f64| -> Vec<f64> {
        let q = (1.0 + x * x + y * y).sqrt();
        vec![x / q, y / q, 1.0 / q]
    };
    for &(x, y) in &[(0.0, 0.0), (0.3, -0.2), (1.0, 0.5), (-2.0, 1.5), (3.0, 3.0)] {
        let w = space.volume_weight(&ChartPoint::new2(x, y)).unwrap();
        let oracle = embedded_area_element(&f, &[1.0, 1.0, 1.0], x, y);
        assert!((w - oracle).abs() < 1e-8, "({x}, {y}): {w} vs {oracle}");
    }
}

#[test]
fn hyperbolic_2d_volume_weight_matches_surface_oracle() {
    let space = SpaceKind::hyperbolic(2);
    // hyperboloid sheet with the Lorentz metric (+, +, -)
    let f = |x: f64, y: f64| -> Vec<f64> {
        let q = (1.0 - x * x - y * y).sqrt();
        vec![x / q, y / q, 1.0 / q]
    };
    for &(x, y) in &[(0.0, 0.0), (0.3, -0.2), (0.5, 0.5), (-0.7, 0.1), (0.0, 0.9)] {
        let w = space.volume_weight(&ChartPoint::new2(x, y)).unwrap();
        let oracle = embedded_area_element(&f, &[1.0, 1.0, -1.0], x, y);
        assert!((w - oracle).abs() < 1e-8, "({x}, {y}): {w} vs {oracle}");
    }
}

#[test]
fn closed_inner_integral_matches_numeric_on_grid() {
    for space in [SpaceKind::spherical(3), SpaceKind::hyperbolic(3), SpaceKind::euclidean(3)] {
        let r = if space.geometry == equilib::spaces::Geometry::Hyperbolic { 0.5 } else { 1.0 };
        let spec = QuadratureSpec { richardson: false, ..QuadratureSpec::default() };
        for i in 0..5 {
            for j in 0..5 {
                let c = 0.1 + 0.2 * i as f64;
                let d = 0.01 + 0.01 * j as f64;
                let params = GombocParams::new(c, d, r, space.clone()).unwrap();
                let body = build_body(&params).unwrap();
                let closed =
                    integrate::first_moment_m3_path(&body, &spec, RadialPath::ClosedForm)
                        .unwrap()
                        .value;
                let numeric =
                    integrate::first_moment_m3_path(&body, &spec, RadialPath::Numeric)
                        .unwrap()
                        .value;
                assert!(
                    (closed - numeric).abs() < 1e-9,
                    "{} c = {c} d = {d}: {closed} vs {numeric}",
                    space.geometry.name()
                );
            }
        }
    }
}

#[test]
fn ellipsoid_curvature_matches_axis_formulas() {
    let (a, b, c) = (2.0_f64, 1.5, 1.0);
    let body = equilib::bodies::perturbed_ellipsoid_3d((a, b, c), 0, 0.0).unwrap();
    // Gaussian curvature at the end of each principal axis: a^2/(b^2 c^2)
    // and permutations
    let k_x = gaussian_curvature(&body, 0.0, 0.0).unwrap();
    assert!((k_x - a * a / (b * b * c * c)).abs() < 1e-5, "{k_x}");
    let k_y = gaussian_curvature(&body, 0.0, FRAC_PI_2).unwrap();
    assert!((k_y - b * b / (a * a * c * c)).abs() < 1e-5, "{k_y}");
    let k_z = gaussian_curvature(&body, FRAC_PI_2 - 1e-9, 0.0).unwrap();
    assert!((k_z - c * c / (a * a * b * b)).abs() < 1e-5, "{k_z}");
}

#[test]
fn offset_sphere_centroid_matches_center() {
    // Euclidean ball of radius 0.8 centered at (0, 0, 0.25), radially
    // parametrized around the origin
    let (a, e) = (0.8_f64, 0.25_f64);
    let radial = move |theta: f64, _phi: f64| {
        let s = theta.sin();
        e * s + (a * a - e * e * (1.0 - s * s)).sqrt()
    };
    let body = RadialBody::new(SpaceKind::euclidean(3), Arc::new(radial));
    let spec = QuadratureSpec::default();
    let cen = integrate::centroid(&body, &spec).unwrap();
    assert!(cen.coords[0].abs() < 1e-10);
    assert!(cen.coords[1].abs() < 1e-10);
    assert!((cen.coords[2] - e).abs() < 1e-10, "{}", cen.coords[2]);
}

#[test]
fn spherical_ball_centroid_is_origin_and_census_degenerate_free() {
    let body = RadialBody::new(SpaceKind::spherical(3), Arc::new(|_, _| 1.0));
    let spec = QuadratureSpec::default();
    let cen = integrate::centroid(&body, &spec).unwrap();
    assert!(cen.norm() < 1e-12);
    // ellipsoid census sanity through the full pipeline
    let ell = equilib::bodies::perturbed_ellipsoid_3d((2.0, 1.5, 1.0), 0, 0.0).unwrap();
    let c = integrate::centroid(&ell, &spec).unwrap();
    let census = find_equilibria(&ell, &c, 48, 1e-7).unwrap();
    assert_eq!((census.s, census.h, census.u), (2, 2, 2));
}
