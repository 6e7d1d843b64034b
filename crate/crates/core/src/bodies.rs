//! Test-body generators and mesh/CSV export: random smooth convex plane
//! bodies in all four plane geometries, perturbed ellipsoids for census
//! batteries, and watertight OBJ output of radial surfaces.

use crate::equilibria::{self, min_curvature};
use crate::error::GeomError;
use crate::gomboc::{RadialBody, RadialBody2};
use crate::integrate::{self, QuadratureSpec};
use crate::spaces::{Geometry, SpaceKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, PI};
use std::io::{BufRead, Write};
use std::sync::Arc;

const REJECTION_LIMIT: usize = 1000;
const CONVEXITY_GRID: usize = 4096;

/// A plane convex body described by a truncated Fourier support function
/// `h(phi) = c0 + sum_k (a_k cos k phi + b_k sin k phi)`, `k = 2..K_max`.
/// The first harmonic is excluded, which pins the Steiner point to the
/// origin; chart convexity is `h + h'' > 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct SupportHarmonics2D {
    pub c0: f64,
    /// Cosine coefficients for `k = 2, 3, ...`.
    pub a: Vec<f64>,
    /// Sine coefficients for `k = 2, 3, ...`.
    pub b: Vec<f64>,
}

impl SupportHarmonics2D {
    pub fn value(&self, phi: f64) -> f64 {
        let mut h = self.c0;
        for (i, (&a, &b)) in self.a.iter().zip(&self.b).enumerate() {
            let k = (i + 2) as f64;
            h += a * (k * phi).cos() + b * (k * phi).sin();
        }
        h
    }

    pub fn d1(&self, phi: f64) -> f64 {
        let mut h = 0.0;
        for (i, (&a, &b)) in self.a.iter().zip(&self.b).enumerate() {
            let k = (i + 2) as f64;
            h += k * (-a * (k * phi).sin() + b * (k * phi).cos());
        }
        h
    }

    pub fn d2(&self, phi: f64) -> f64 {
        let mut h = 0.0;
        for (i, (&a, &b)) in self.a.iter().zip(&self.b).enumerate() {
            let k = (i + 2) as f64;
            h -= k * k * (a * (k * phi).cos() + b * (k * phi).sin());
        }
        h
    }

    /// Strict convexity certificate on a dense grid: `h + h'' > 0`.
    pub fn is_convex(&self) -> bool {
        (0..CONVEXITY_GRID).all(|i| {
            let phi = 2.0 * PI * i as f64 / CONVEXITY_GRID as f64;
            self.value(phi) + self.d2(phi) > 0.0
        })
    }

    /// Boundary point of the support body at support parameter `phi`:
    /// `h u + h' u_perp`.
    pub fn boundary_point(&self, phi: f64) -> [f64; 2] {
        let (s, c) = phi.sin_cos();
        let h = self.value(phi);
        let hp = self.d1(phi);
        [h * c - hp * s, h * s + hp * c]
    }

    /// Radial function around the origin, by inverting the direction-angle
    /// map `psi(phi) = phi + atan2(h', h)`, which is strictly increasing
    /// for convex `h`. Newton with a bisection fallback; the exact angle
    /// derivative is `h (h + h'') / |x|^2` from the boundary tangent
    /// `(h + h'') u_perp`.
    pub fn radial(&self, psi: f64) -> f64 {
        // the boundary direction deviates from phi by less than pi/2
        let (mut lo, mut hi) = (psi - FRAC_PI_2, psi + FRAC_PI_2);
        let gap = |phi: f64| {
            let x = self.boundary_point(phi);
            let ang = x[1].atan2(x[0]);
            // wrapped, monotone difference on the bracketing interval
            let mut d = ang - psi;
            while d > PI {
                d -= 2.0 * PI;
            }
            while d < -PI {
                d += 2.0 * PI;
            }
            d
        };
        let mut phi = psi;
        let mut g = gap(phi);
        for _ in 0..30 {
            if g < 0.0 {
                lo = phi;
            } else {
                hi = phi;
            }
            if g.abs() < 1e-14 {
                break;
            }
            let h = self.value(phi);
            let hp = self.d1(phi);
            let slope = h * (h + self.d2(phi)) / (h * h + hp * hp);
            let next = phi - g / slope;
            phi = if next > lo && next < hi { next } else { 0.5 * (lo + hi) };
            g = gap(phi);
        }
        let x = self.boundary_point(phi);
        x[0].hypot(x[1])
    }
}

/// Draws the harmonic coefficients for one candidate body: `c0 = scale`,
/// `|a_k|, |b_k| <= c0 / (4 k^2)`.
fn draw_harmonics(rng: &mut ChaCha8Rng, scale: f64, k_max: usize) -> SupportHarmonics2D {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for k in 2..=k_max {
        let bound = scale / (4.0 * (k * k) as f64);
        a.push(rng.gen_range(-bound..bound));
        b.push(rng.gen_range(-bound..bound));
    }
    SupportHarmonics2D { c0: scale, a, b }
}

/// A random smooth convex plane body in the given space, deterministic per
/// seed. The support function is drawn in the chart; chart convexity
/// implies geodesic convexity because both curved charts map geodesics to
/// lines. Spherical bodies are post-checked to stay well inside the open
/// hemisphere around their centroid.
pub fn random_convex_2d(
    space: &SpaceKind,
    seed: u64,
    scale: f64,
    k_max: usize,
) -> Result<RadialBody2, GeomError> {
    if space.dim != 2 {
        return Err(GeomError::InvalidParams("random_convex_2d requires dim = 2".into()));
    }
    if !(scale > 0.0) || (space.geometry == Geometry::Hyperbolic && scale >= 0.5) {
        return Err(GeomError::InvalidParams(format!("scale = {scale} out of range")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..REJECTION_LIMIT {
        let h = draw_harmonics(&mut rng, scale, k_max);
        if !h.is_convex() {
            continue;
        }
        let harmonics = h.clone();
        let body = RadialBody2::new(
            space.clone(),
            Arc::new(move |phi: f64| harmonics.radial(phi)),
        );
        if !post_check_2d(&body)? {
            continue;
        }
        return Ok(body);
    }
    Err(GeomError::RejectionLimit(format!(
        "no convex draw within {REJECTION_LIMIT} attempts at scale {scale}"
    )))
}

/// The coefficient vector a seed produces, for determinism checks.
pub fn harmonics_for_seed(seed: u64, scale: f64, k_max: usize) -> SupportHarmonics2D {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let h = draw_harmonics(&mut rng, scale, k_max);
        if h.is_convex() {
            return h;
        }
    }
}

fn post_check_2d(body: &RadialBody2) -> Result<bool, GeomError> {
    match body.space.geometry {
        Geometry::Spherical => {
            // open-hemisphere margin around the centroid
            let c = integrate::centroid2(body, &QuadratureSpec::default())?;
            let centered = equilibria::recenter_body2(body, &c)?;
            let cap = (FRAC_PI_2 - 0.2).tan();
            for j in 0..512 {
                let r = centered.radial(2.0 * PI * j as f64 / 512.0);
                if !r.is_finite() || r > cap {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Geometry::Hyperbolic => {
            for j in 0..512 {
                if body.radial(2.0 * PI * j as f64 / 512.0) >= 1.0 {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => Ok(true),
    }
}

/// Exact ellipsoid radial function.
pub fn ellipsoid_radial(a: f64, b: f64, c: f64, theta: f64, phi: f64) -> f64 {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    1.0 / ((ct * cp / a).powi(2) + (ct * sp / b).powi(2) + (st / c).powi(2)).sqrt()
}

/// A Euclidean ellipsoid with a low-order smooth radial perturbation,
/// convexity re-certified by the curvature check; deterministic per seed.
pub fn perturbed_ellipsoid_3d(
    semi_axes: (f64, f64, f64),
    seed: u64,
    amplitude: f64,
) -> Result<RadialBody, GeomError> {
    let (a, b, c) = semi_axes;
    if !(a >= b && b >= c && c > 0.0) {
        return Err(GeomError::InvalidParams(format!(
            "semi-axes must satisfy a >= b >= c > 0, got ({a}, {b}, {c})"
        )));
    }
    if !(amplitude >= 0.0 && amplitude < 0.05 * c) {
        return Err(GeomError::InvalidParams(format!(
            "amplitude {amplitude} must lie in [0, 0.05 c)"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tries = if amplitude == 0.0 { 1 } else { 200 };
    for _ in 0..tries {
        // cubic polynomial in the direction components, normalized to
        // sup-norm <= amplitude
        let coef: Vec<f64> = (0..10).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm: f64 = coef.iter().map(|v| v.abs()).sum::<f64>().max(1e-12);
        let amp = amplitude / norm;
        let cf = coef.clone();
        let radial = move |theta: f64, phi: f64| {
            let (st, ct) = theta.sin_cos();
            let (sp, cp) = phi.sin_cos();
            let (x, y, z) = (ct * cp, ct * sp, st);
            let pert = cf[0] * x
                + cf[1] * y
                + cf[2] * z
                + cf[3] * x * y
                + cf[4] * y * z
                + cf[5] * x * z
                + cf[6] * x * x * y
                + cf[7] * y * y * z
                + cf[8] * z * z * x
                + cf[9] * x * y * z;
            ellipsoid_radial(a, b, c, theta, phi) + amp * pert
        };
        let body = RadialBody::new(SpaceKind::euclidean(3), Arc::new(radial));
        if amplitude == 0.0 {
            return Ok(body);
        }
        if min_curvature(&body, 32)?.min > 0.0 {
            return Ok(body);
        }
    }
    Err(GeomError::RejectionLimit(format!(
        "no convex perturbation within {tries} attempts at amplitude {amplitude}"
    )))
}

/// Writes the chart boundary surface as a watertight triangulated OBJ:
/// two pole vertices, `n_theta - 1` latitude rows of `n_phi` vertices,
/// pole fans and split quads. A comment line records the grid so the mesh
/// can be re-imported losslessly.
pub fn export_mesh(
    body: &RadialBody,
    n_theta: usize,
    n_phi: usize,
    path: &str,
) -> Result<(), GeomError> {
    let f = std::fs::File::create(path)
        .map_err(|e| GeomError::Io(format!("{path}: {e}")))?;
    let mut w = std::io::BufWriter::new(f);
    write_mesh(body, n_theta, n_phi, &mut w, false)
        .map_err(|e| GeomError::Io(format!("{path}: {e}")))
}

/// Same topology, but vertices are the first three coordinates of the
/// embedded boundary (model hypersurface in R^4); flagged in a comment.
pub fn export_mesh_embedded(
    body: &RadialBody,
    n_theta: usize,
    n_phi: usize,
    path: &str,
) -> Result<(), GeomError> {
    if matches!(body.space.geometry, Geometry::Euclidean | Geometry::Normed) {
        return Err(GeomError::InvalidParams(
            "embedded export applies to curved geometries only".into(),
        ));
    }
    let f = std::fs::File::create(path)
        .map_err(|e| GeomError::Io(format!("{path}: {e}")))?;
    let mut w = std::io::BufWriter::new(f);
    write_mesh(body, n_theta, n_phi, &mut w, true)
        .map_err(|e| GeomError::Io(format!("{path}: {e}")))
}

fn write_mesh(
    body: &RadialBody,
    n_theta: usize,
    n_phi: usize,
    w: &mut dyn Write,
    embedded: bool,
) -> std::io::Result<()> {
    assert!(n_theta >= 2 && n_phi >= 3);
    writeln!(w, "# radial surface grid {n_theta} {n_phi}{}", if embedded { " embedded" } else { "" })?;
    let vertex = |t: f64, p: f64| -> [f64; 3] {
        let r = body.radial(t, p);
        let (st, ct) = t.sin_cos();
        let (sp, cp) = p.sin_cos();
        let x = [r * ct * cp, r * ct * sp, r * st];
        if embedded {
            let q = match body.space.geometry {
                Geometry::Spherical => (1.0 + r * r).sqrt(),
                Geometry::Hyperbolic => (1.0 - r * r).sqrt(),
                _ => 1.0,
            };
            [x[0] / q, x[1] / q, x[2] / q]
        } else {
            x
        }
    };
    // vertex 1: south pole; rows bottom to top; last vertex: north pole
    let south = vertex(-FRAC_PI_2, 0.0);
    writeln!(w, "v {} {} {}", south[0], south[1], south[2])?;
    for i in 1..n_theta {
        let t = -FRAC_PI_2 + PI * i as f64 / n_theta as f64;
        for j in 0..n_phi {
            let p = 2.0 * PI * j as f64 / n_phi as f64;
            let v = vertex(t, p);
            writeln!(w, "v {} {} {}", v[0], v[1], v[2])?;
        }
    }
    let north = vertex(FRAC_PI_2, 0.0);
    writeln!(w, "v {} {} {}", north[0], north[1], north[2])?;

    let idx = |i: usize, j: usize| 2 + (i - 1) * n_phi + (j % n_phi);
    let last = 2 + (n_theta - 1) * n_phi;
    // south fan (outward orientation: counterclockwise seen from outside)
    for j in 0..n_phi {
        writeln!(w, "f 1 {} {}", idx(1, j + 1), idx(1, j))?;
    }
    for i in 1..n_theta - 1 {
        for j in 0..n_phi {
            let (v00, v01) = (idx(i, j), idx(i, j + 1));
            let (v10, v11) = (idx(i + 1, j), idx(i + 1, j + 1));
            writeln!(w, "f {v00} {v01} {v11}")?;
            writeln!(w, "f {v00} {v11} {v10}")?;
        }
    }
    for j in 0..n_phi {
        writeln!(w, "f {last} {} {}", idx(n_theta - 1, j), idx(n_theta - 1, j + 1))?;
    }
    Ok(())
}

/// Reads back a mesh written by [`export_mesh`] and reconstructs the radial
/// function by bilinear interpolation on the recorded grid.
pub fn import_mesh_radial(path: &str, space: &SpaceKind) -> Result<RadialBody, GeomError> {
    let f = std::fs::File::open(path)
        .map_err(|e| GeomError::Io(format!("{path}: {e}")))?;
    let reader = std::io::BufReader::new(f);
    let mut grid: Option<(usize, usize)> = None;
    let mut verts: Vec<[f64; 3]> = Vec::new();
    for line in reader.lines() {
        let line = line.map_err(|e| GeomError::Io(format!("{path}: {e}")))?;
        if let Some(rest) = line.strip_prefix("# radial surface grid ") {
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() >= 2 {
                let nt = parts[0].parse().map_err(|_| bad_grid(path))?;
                let np = parts[1].parse().map_err(|_| bad_grid(path))?;
                grid = Some((nt, np));
            }
        } else if let Some(rest) = line.strip_prefix("v ") {
            let xs: Vec<f64> = rest
                .split_whitespace()
                .map(|s| s.parse().map_err(|_| bad_grid(path)))
                .collect::<Result<_, _>>()?;
            if xs.len() != 3 {
                return Err(bad_grid(path));
            }
            verts.push([xs[0], xs[1], xs[2]]);
        }
    }
    let (nt, np) = grid.ok_or_else(|| bad_grid(path))?;
    if verts.len() != 2 + (nt - 1) * np {
        return Err(bad_grid(path));
    }
    let rnorm = |v: &[f64; 3]| (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    let r_south = rnorm(&verts[0]);
    let r_north = rnorm(verts.last().unwrap());
    let mut rows = vec![vec![0.0; np]; nt - 1];
    for i in 0..nt - 1 {
        for j in 0..np {
            rows[i][j] = rnorm(&verts[1 + i * np + j]);
        }
    }
    let radial = move |theta: f64, phi: f64| -> f64 {
        // fractional row index over theta in [-pi/2, pi/2], rows at i=1..nt-1
        let ti = theta.clamp(-FRAC_PI_2, FRAC_PI_2) / PI * nt as f64 + nt as f64 / 2.0;
        let pj = phi.rem_euclid(2.0 * PI) / (2.0 * PI) * np as f64;
        let j0 = pj.floor() as usize % np;
        let fj = pj - pj.floor();
        let row_val = |i: usize| -> f64 {
            let v0 = rows[i][j0];
            let v1 = rows[i][(j0 + 1) % np];
            v0 + fj * (v1 - v0)
        };
        if ti <= 1.0 {
            let f = ti.max(0.0);
            r_south + f * (row_val(0) - r_south)
        } else if ti >= (nt - 1) as f64 {
            let f = (ti - (nt - 1) as f64).min(1.0);
            row_val(nt - 2) + f * (r_north - row_val(nt - 2))
        } else {
            let i0 = ti.floor() as usize;
            let f = ti - i0 as f64;
            row_val(i0 - 1) + f * (row_val(i0) - row_val(i0 - 1))
        }
    };
    Ok(RadialBody::new(space.clone(), Arc::new(radial)))
}

fn bad_grid(path: &str) -> GeomError {
    GeomError::Io(format!("{path}: not a radial surface mesh written by this exporter"))
}

/// CSV dump `phi,radial` of a plane body.
pub fn dump_csv_2d(body: &RadialBody2, n: usize, path: &str) -> Result<(), GeomError> {
    let mut out = String::from("phi,radial\n");
    for j in 0..n {
        let phi = 2.0 * PI * j as f64 / n as f64;
        out.push_str(&format!("{},{:.17e}\n", phi, body.radial(phi)));
    }
    std::fs::write(path, out).map_err(|e| GeomError::Io(format!("{path}: {e}")))
}

/// CSV dump `theta,phi,radial` of a 3D body.
pub fn dump_csv_3d(
    body: &RadialBody,
    n_theta: usize,
    n_phi: usize,
    path: &str,
) -> Result<(), GeomError> {
    let mut out = String::from("theta,phi,radial\n");
    for i in 0..=n_theta {
        let t = -FRAC_PI_2 + PI * i as f64 / n_theta as f64;
        for j in 0..n_phi {
            let p = 2.0 * PI * j as f64 / n_phi as f64;
            out.push_str(&format!("{},{},{:.17e}\n", t, p, body.radial(t, p)));
        }
    }
    std::fs::write(path, out).map_err(|e| GeomError::Io(format!("{path}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::NormProfile;

    fn plane_spaces() -> Vec<SpaceKind> {
        vec![
            SpaceKind::euclidean(2),
            SpaceKind::spherical(2),
            SpaceKind::hyperbolic(2),
            SpaceKind::normed(2, NormProfile::superellipsoid(4.0)),
        ]
    }

    #[test]
    fn zero_harmonics_is_a_circle() {
        let h = SupportHarmonics2D { c0: 0.4, a: vec![], b: vec![] };
        assert!(h.is_convex());
        for j in 0..32 {
            let psi = 2.0 * PI * j as f64 / 32.0;
            assert!((h.radial(psi) - 0.4).abs() < 1e-12);
        }
    }

    #[test]
    fn support_body_radial_matches_boundary() {
        let h = SupportHarmonics2D { c0: 0.4, a: vec![0.02, -0.01], b: vec![0.015, 0.005] };
        assert!(h.is_convex());
        // the radial point in the direction of a boundary point is that point
        for j in 0..64 {
            let phi = 2.0 * PI * j as f64 / 64.0;
            let x = h.boundary_point(phi);
            let psi = x[1].atan2(x[0]);
            let r = h.radial(psi);
            assert!((r - x[0].hypot(x[1])).abs() < 1e-10, "phi = {phi}");
        }
    }

    #[test]
    fn generator_is_deterministic() {
        let h1 = harmonics_for_seed(42, 0.3, 6);
        let h2 = harmonics_for_seed(42, 0.3, 6);
        assert_eq!(h1, h2);
        let b1 = random_convex_2d(&SpaceKind::euclidean(2), 42, 0.3, 6).unwrap();
        let b2 = random_convex_2d(&SpaceKind::euclidean(2), 42, 0.3, 6).unwrap();
        for j in 0..64 {
            let phi = 2.0 * PI * j as f64 / 64.0;
            assert_eq!(b1.radial(phi), b2.radial(phi));
        }
    }

    #[test]
    fn generated_bodies_are_convex_in_all_geometries() {
        for space in plane_spaces() {
            for seed in 0..10 {
                let h = harmonics_for_seed(seed, 0.3, 6);
                assert!(h.is_convex(), "{space:?} seed {seed}");
                let body = random_convex_2d(&space, seed, 0.3, 6).unwrap();
                let r0 = body.radial(0.0);
                assert!(r0 > 0.2 && r0 < 0.45, "{space:?} seed {seed}: r = {r0}");
            }
        }
    }

    #[test]
    fn generated_body_moment_vanishes_at_centroid() {
        let spec = QuadratureSpec::default();
        for space in plane_spaces() {
            let body = random_convex_2d(&space, 7, 0.3, 6).unwrap();
            let c = integrate::centroid2(&body, &spec).unwrap();
            let worst = integrate::moment_condition_check_2d(&body, &c, 8, &spec).unwrap();
            assert!(worst < 1e-6, "{space:?}: max |M_H| = {worst}");
        }
    }

    #[test]
    fn unperturbed_ellipsoid_is_exact() {
        let body = perturbed_ellipsoid_3d((2.0, 1.5, 1.0), 0, 0.0).unwrap();
        for (t, p) in [(0.3, 1.0), (-1.2, 4.5), (0.0, 0.0), (FRAC_PI_2, 0.0)] {
            let expect = ellipsoid_radial(2.0, 1.5, 1.0, t, p);
            assert!((body.radial(t, p) - expect).abs() < 1e-15);
        }
        assert!((body.radial(0.0, 0.0) - 2.0).abs() < 1e-15);
        assert!((body.radial(FRAC_PI_2, 0.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn perturbed_ellipsoids_stay_convex() {
        for seed in 0..5 {
            let body = perturbed_ellipsoid_3d((2.0, 1.5, 1.0), seed, 0.04).unwrap();
            assert!(min_curvature(&body, 32).unwrap().min > 0.0, "seed {seed}");
        }
    }

    #[test]
    fn ellipsoid_axis_order_is_validated() {
        assert!(matches!(
            perturbed_ellipsoid_3d((1.0, 1.5, 1.0), 0, 0.0),
            Err(GeomError::InvalidParams(_))
        ));
        assert!(matches!(
            perturbed_ellipsoid_3d((2.0, 1.5, 1.0), 0, 0.2),
            Err(GeomError::InvalidParams(_))
        ));
    }

    #[test]
    fn exported_ball_mesh_is_watertight() {
        let body = RadialBody::new(SpaceKind::euclidean(3), Arc::new(|_, _| 0.75));
        let path = std::env::temp_dir().join("equilib_ball_test.obj");
        let path = path.to_str().unwrap();
        let (nt, np) = (16, 24);
        export_mesh(&body, nt, np, path).unwrap();
        let text = std::fs::read_to_string(path).unwrap();
        let mut nv = 0;
        let mut faces: Vec<[usize; 3]> = Vec::new();
        for line in text.lines() {
            if let Some(rest) = line.strip_prefix("v ") {
                nv += 1;
                let xs: Vec<f64> =
                    rest.split_whitespace().map(|s| s.parse().unwrap()).collect();
                let n = (xs[0] * xs[0] + xs[1] * xs[1] + xs[2] * xs[2]).sqrt();
                assert!((n - 0.75).abs() < 1e-12);
            } else if let Some(rest) = line.strip_prefix("f ") {
                let is: Vec<usize> =
                    rest.split_whitespace().map(|s| s.parse().unwrap()).collect();
                faces.push([is[0], is[1], is[2]]);
            }
        }
        assert_eq!(nv, 2 + (nt - 1) * np);
        // watertight: every undirected edge in exactly two faces, Euler 2
        let mut edges = std::collections::HashMap::new();
        for f in &faces {
            for (u, v) in [(f[0], f[1]), (f[1], f[2]), (f[2], f[0])] {
                *edges.entry((u.min(v), u.max(v))).or_insert(0usize) += 1;
            }
        }
        assert!(edges.values().all(|&c| c == 2));
        let euler = nv as i64 - edges.len() as i64 + faces.len() as i64;
        assert_eq!(euler, 2);
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn mesh_roundtrip_preserves_hausdorff() {
        let params =
            crate::gomboc::GombocParams::new(0.3, 0.02, 1.0, SpaceKind::spherical(3)).unwrap();
        let body = crate::gomboc::build_body(&params).unwrap();
        let path = std::env::temp_dir().join("equilib_roundtrip_test.obj");
        let path = path.to_str().unwrap();
        export_mesh(&body, 256, 512, path).unwrap();
        let imported = import_mesh_radial(path, &body.space).unwrap();
        let h_direct = crate::equilibria::hausdorff_to_ball(&body, 1.0).unwrap();
        let h_mesh = crate::equilibria::hausdorff_to_ball(&imported, 1.0).unwrap();
        assert!((h_direct - h_mesh).abs() < 1e-3, "{h_direct} vs {h_mesh}");
        std::fs::remove_file(path).ok();
    }

    #[test]
    fn csv_dumps_have_headers() {
        let b2 = RadialBody2::new(SpaceKind::euclidean(2), Arc::new(|_| 1.0));
        let p2 = std::env::temp_dir().join("equilib_csv2_test.csv");
        dump_csv_2d(&b2, 16, p2.to_str().unwrap()).unwrap();
        let t2 = std::fs::read_to_string(&p2).unwrap();
        assert!(t2.starts_with("phi,radial\n"));
        assert_eq!(t2.lines().count(), 17);
        std::fs::remove_file(&p2).ok();

        let b3 = RadialBody::new(SpaceKind::euclidean(3), Arc::new(|_, _| 1.0));
        let p3 = std::env::temp_dir().join("equilib_csv3_test.csv");
        dump_csv_3d(&b3, 4, 8, p3.to_str().unwrap()).unwrap();
        let t3 = std::fs::read_to_string(&p3).unwrap();
        assert!(t3.starts_with("theta,phi,radial\n"));
        std::fs::remove_file(&p3).ok();
    }
}
