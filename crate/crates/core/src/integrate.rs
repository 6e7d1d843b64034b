//! Quadrature over radial bodies: first moments, centroids, derivative
//! diagnostics and the centering root-finder.
//!
//! All integrals run in chart spherical/polar coordinates around the chart
//! origin: Gauss-Legendre nodes in the polar angle and the radial variable,
//! uniform trapezoid nodes in the azimuth (the integrands are periodic there,
//! so the trapezoid rule is spectrally accurate). Summation order is fixed
//! for every parallel width, so results are bitwise reproducible.

use crate::error::GeomError;
use crate::gomboc::{self, GombocParams, RadialBody, RadialBody2};
use crate::spaces::{ChartPoint, Geometry, OrientedGeodesicHyperplane, SpaceKind};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::{Arc, Mutex, OnceLock};

/// Node counts and options for the quadrature engine.
#[derive(Clone, Copy, Debug)]
pub struct QuadratureSpec {
    /// Gauss-Legendre nodes in the polar angle.
    pub n_theta: usize,
    /// Uniform trapezoid nodes in the azimuth.
    pub n_phi: usize,
    /// Gauss-Legendre nodes in the radial variable (numeric radial path).
    pub n_r: usize,
    /// Estimate the error by doubling all node counts.
    pub richardson: bool,
    /// Parallel width for the polar-angle loop; 1 by default.
    pub jobs: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { n_theta: 64, n_phi: 128, n_r: 32, richardson: true, jobs: 1 }
    }
}

/// A first-moment value with its grid-doubling error estimate.
#[derive(Clone, Copy, Debug)]
pub struct MomentReport {
    pub value: f64,
    pub error_estimate: f64,
    pub spec: QuadratureSpec,
}

/// How the innermost (radial) integral of the first moment is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RadialPath {
    /// The exact antiderivative of `r^3 w(r)`.
    ClosedForm,
    /// Gauss-Legendre quadrature on `[0, s]`.
    Numeric,
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`, cached per order.
pub fn gauss_legendre(n: usize) -> Arc<Vec<(f64, f64)>> {
    static CACHE: OnceLock<Mutex<std::collections::HashMap<usize, Arc<Vec<(f64, f64)>>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(std::collections::HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&n) {
        return v.clone();
    }
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        // Newton iteration on P_n from the Chebyshev initial guess
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            pp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / pp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * pp * pp);
        out.push((x, w));
    }
    out.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    let arc = Arc::new(out);
    cache.lock().unwrap().insert(n, arc.clone());
    arc
}

/// Sums `row(i)` for `i in 0..n` over `jobs` contiguous blocks. Block
/// partials are accumulated left to right, so for a fixed `jobs` the result
/// is bitwise identical regardless of thread scheduling.
pub fn par_sum<F>(n: usize, jobs: usize, row: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let jobs = jobs.max(1).min(n.max(1));
    if jobs == 1 {
        return (0..n).map(&row).sum();
    }
    let mut partials = vec![0.0; jobs];
    let chunk = n.div_ceil(jobs);
    std::thread::scope(|scope| {
        for (b, slot) in partials.iter_mut().enumerate() {
            let row = &row;
            scope.spawn(move || {
                let lo = b * chunk;
                let hi = ((b + 1) * chunk).min(n);
                let mut s = 0.0;
                for i in lo..hi {
                    s += row(i);
                }
                *slot = s;
            });
        }
    });
    partials.iter().sum()
}

fn inner_moment_closed(geometry: Geometry, s: f64) -> f64 {
    match geometry {
        // int_0^s r^3 (1 + r^2)^{-5/2} dr
        Geometry::Spherical => {
            let q = 1.0 + s * s;
            2.0 / 3.0 - (3.0 * s * s + 2.0) / (3.0 * q.powf(1.5))
        }
        // int_0^s r^3 (1 - r^2)^{-5/2} dr
        Geometry::Hyperbolic => {
            let q = 1.0 - s * s;
            2.0 / 3.0 + (3.0 * s * s - 2.0) / (3.0 * q.powf(1.5))
        }
        // int_0^s r^3 dr
        Geometry::Euclidean | Geometry::Normed => s.powi(4) / 4.0,
    }
}

fn inner_moment_numeric(geometry: Geometry, s: f64, n_r: usize) -> f64 {
    let gl = gauss_legendre(n_r);
    let mut sum = 0.0;
    for &(x, w) in gl.iter() {
        let r = 0.5 * s * (x + 1.0);
        let w3 = match geometry {
            Geometry::Spherical => (1.0 + r * r).powf(-2.5),
            Geometry::Hyperbolic => (1.0 - r * r).powf(-2.5),
            Geometry::Euclidean | Geometry::Normed => 1.0,
        };
        sum += w * r * r * r * w3;
    }
    sum * 0.5 * s
}

fn m3_grid(
    radial: &(dyn Fn(f64, f64) -> f64 + Sync),
    geometry: Geometry,
    path: RadialPath,
    n_theta: usize,
    n_phi: usize,
    n_r: usize,
    jobs: usize,
) -> f64 {
    let gl = gauss_legendre(n_theta);
    let wphi = 2.0 * PI / n_phi as f64;
    par_sum(n_theta, jobs, |i| {
        let (x, w) = gl[i];
        let theta = FRAC_PI_2 * x;
        let wt = w * FRAC_PI_2;
        let (st, ct) = theta.sin_cos();
        let mut row = 0.0;
        for j in 0..n_phi {
            let phi = wphi * j as f64;
            let s = radial(theta, phi);
            let inner = match path {
                RadialPath::ClosedForm => inner_moment_closed(geometry, s),
                RadialPath::Numeric => inner_moment_numeric(geometry, s, n_r),
            };
            row += wphi * inner;
        }
        wt * row * st * ct
    })
}

/// First moment of the body with respect to the oriented reference
/// hyperplane `{x3 = 0}`, in chart spherical coordinates. The spherical and
/// hyperbolic radial integrals use the exact antiderivative unless the
/// numeric path is requested.
pub fn first_moment_m3(body: &RadialBody, spec: &QuadratureSpec) -> Result<MomentReport, GeomError> {
    first_moment_m3_path(body, spec, RadialPath::ClosedForm)
}

pub fn first_moment_m3_path(
    body: &RadialBody,
    spec: &QuadratureSpec,
    path: RadialPath,
) -> Result<MomentReport, GeomError> {
    let geometry = body.space.geometry;
    if body.space.dim != 3 {
        return Err(GeomError::InvalidParams("first moment requires dim = 3".into()));
    }
    if geometry == Geometry::Hyperbolic && body.max_radial(64) >= 1.0 {
        return Err(GeomError::OutOfChart("body touches the projective ball boundary".into()));
    }
    let radial = |t: f64, p: f64| body.radial(t, p);
    let coarse = m3_grid(&radial, geometry, path, spec.n_theta, spec.n_phi, spec.n_r, spec.jobs);
    if spec.richardson {
        let fine = m3_grid(
            &radial,
            geometry,
            path,
            2 * spec.n_theta,
            2 * spec.n_phi,
            2 * spec.n_r,
            spec.jobs,
        );
        Ok(MomentReport { value: fine, error_estimate: (fine - coarse).abs(), spec: *spec })
    } else {
        Ok(MomentReport { value: coarse, error_estimate: 0.0, spec: *spec })
    }
}

/// `M3` of the family member `K(c, d)` without constructing a body; `d` may
/// be slightly negative here, which the derivative probe below relies on.
fn m3_family(c: f64, d: f64, r: f64, space: &SpaceKind, spec: &QuadratureSpec) -> f64 {
    let prof = space.profile.clone();
    let geometry = space.geometry;
    let radial = move |t: f64, p: f64| {
        let base = r * (1.0 + d * gomboc::height_profile(c, t, p));
        match &prof {
            Some(m) => base * m.value(t),
            None => base,
        }
    };
    m3_grid(
        &radial,
        geometry,
        RadialPath::ClosedForm,
        spec.n_theta,
        spec.n_phi,
        spec.n_r,
        spec.jobs,
    )
}

/// Numeric `dM3/dd` at `d = 0` by Richardson-extrapolated central
/// differences with steps `1e-3` and `5e-4`.
pub fn dm3_dd_at0(c: f64, r: f64, space: &SpaceKind, spec: &QuadratureSpec) -> f64 {
    // doubled grid; the difference quotient amplifies quadrature noise by 1/h
    let fine = QuadratureSpec {
        n_theta: 2 * spec.n_theta,
        n_phi: 2 * spec.n_phi,
        richardson: false,
        ..*spec
    };
    let diff = |h: f64| {
        (m3_family(c, h, r, space, &fine) - m3_family(c, -h, r, space, &fine)) / (2.0 * h)
    };
    let d1 = diff(1e-3);
    let d2 = diff(5e-4);
    (4.0 * d2 - d1) / 3.0
}

/// Closed form of `dM3/dd` at `d = 0` for `c = 1` in the spherical chart.
pub fn dm3_dd_at0_closed_spherical(r: f64) -> f64 {
    (4.0 * PI / 3.0) * r.powi(4) / (r * r + 1.0).powf(2.5)
}

/// The limiting angular integral of the height profile's `c -> 0+` limit
/// against `cos(theta) sin(theta)`, reported under both candidate
/// normalizations: `(raw double integral over theta and phi, raw / 2 pi)`.
pub fn rho0_moment_constant(spec: &QuadratureSpec) -> (f64, f64) {
    let gl = gauss_legendre(spec.n_theta.max(128));
    let mut total = 0.0;
    for &(x, w) in gl.iter() {
        let theta = FRAC_PI_2 * x;
        let (st, ct) = theta.sin_cos();
        // the azimuthal transition sharpens like (pi/2 - |theta|)^2 near the
        // poles, so the phi integral is done adaptively; quarter-period
        // symmetry reduces the range
        let f = |phi: f64| gomboc::height_profile_limit(theta, phi);
        let phi_int = 4.0 * adaptive_simpson(&f, 0.0, FRAC_PI_2, 1e-12, 40);
        total += w * FRAC_PI_2 * phi_int * st * ct;
    }
    (total, total / (2.0 * PI))
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64, depth: u32) -> f64 {
    fn simpson(a: f64, fa: f64, b: f64, fb: f64, fm: f64) -> f64 {
        (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    }
    fn rec(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        fm: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = simpson(a, fa, m, fm, flm);
        let right = simpson(m, fm, b, fb, frm);
        if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
            left + right + (left + right - whole) / 15.0
        } else {
            rec(f, a, fa, m, fm, flm, left, tol / 2.0, depth - 1)
                + rec(f, m, fm, b, fb, frm, right, tol / 2.0, depth - 1)
        }
    }
    let m = 0.5 * (a + b);
    let (fa, fb, fm) = (f(a), f(b), f(m));
    let whole = simpson(a, fa, b, fb, fm);
    rec(f, a, fa, b, fb, fm, whole, tol, depth)
}

/// Centroid of a 3D radial body, as a chart point.
///
/// Curved spaces integrate the embedded position against the volume weight
/// and renormalize onto the model hypersurface; flat spaces take the
/// Lebesgue centroid. The chart image of the normalized embedded centroid is
/// the component ratio against the last coordinate in both curved charts.
pub fn centroid(body: &RadialBody, spec: &QuadratureSpec) -> Result<ChartPoint, GeomError> {
    let geometry = body.space.geometry;
    if geometry == Geometry::Hyperbolic && body.max_radial(64) >= 1.0 {
        return Err(GeomError::OutOfChart("body touches the projective ball boundary".into()));
    }
    let compute = |nt: usize, np: usize, nr: usize| -> ([f64; 4], f64) {
        let gl_t = gauss_legendre(nt);
        let gl_r = gauss_legendre(nr);
        let wphi = 2.0 * PI / np as f64;
        let mut acc = [0.0; 4];
        let mut mass = 0.0;
        for &(x, w) in gl_t.iter() {
            let theta = FRAC_PI_2 * x;
            let wt = w * FRAC_PI_2;
            let (st, ct) = theta.sin_cos();
            for j in 0..np {
                let phi = wphi * j as f64;
                let (sp, cp) = phi.sin_cos();
                let u = [ct * cp, ct * sp, st];
                let s = body.radial(theta, phi);
                for &(xr, wr) in gl_r.iter() {
                    let r = 0.5 * s * (xr + 1.0);
                    let jac = wt * wphi * 0.5 * s * wr * r * r * ct;
                    let r2 = r * r;
                    match geometry {
                        Geometry::Euclidean | Geometry::Normed => {
                            for k in 0..3 {
                                acc[k] += jac * r * u[k];
                            }
                            mass += jac;
                        }
                        Geometry::Spherical => {
                            let lift = (1.0 + r2).sqrt();
                            let wv = (1.0 + r2).powi(-2);
                            for k in 0..3 {
                                acc[k] += jac * wv * r * u[k] / lift;
                            }
                            acc[3] += jac * wv / lift;
                            mass += jac * wv;
                        }
                        Geometry::Hyperbolic => {
                            let lift = (1.0 - r2).sqrt();
                            let wv = (1.0 - r2).powi(-2);
                            for k in 0..3 {
                                acc[k] += jac * wv * r * u[k] / lift;
                            }
                            acc[3] += jac * wv / lift;
                            mass += jac * wv;
                        }
                    }
                }
            }
        }
        (acc, mass)
    };
    let (acc, mass) = compute(spec.n_theta, spec.n_phi, spec.n_r);
    if mass <= 1e-300 {
        return Err(GeomError::Degenerate("zero-volume body".into()));
    }
    Ok(centroid_from_acc(geometry, &acc, mass, 3))
}

pub(crate) fn centroid_from_acc(
    geometry: Geometry,
    acc: &[f64; 4],
    mass: f64,
    dim: usize,
) -> ChartPoint {
    let mut coords = [0.0; 3];
    match geometry {
        Geometry::Euclidean | Geometry::Normed => {
            for k in 0..dim {
                coords[k] = acc[k] / mass;
            }
        }
        Geometry::Spherical | Geometry::Hyperbolic => {
            // gnomonic / projective chart of the renormalized direction:
            // scaling drops out of the component ratio
            for k in 0..dim {
                coords[k] = acc[k] / acc[dim];
            }
        }
    }
    ChartPoint { coords, dim }
}

/// Centroid of a plane radial body.
pub fn centroid2(body: &RadialBody2, spec: &QuadratureSpec) -> Result<ChartPoint, GeomError> {
    let geometry = body.space.geometry;
    let np = spec.n_phi.max(2 * spec.n_theta);
    let gl_r = gauss_legendre(spec.n_r);
    let wphi = 2.0 * PI / np as f64;
    let mut acc = [0.0; 4];
    let mut mass = 0.0;
    for j in 0..np {
        let phi = wphi * j as f64;
        let (sp, cp) = phi.sin_cos();
        let s = body.radial(phi);
        if geometry == Geometry::Hyperbolic && s >= 1.0 {
            return Err(GeomError::OutOfChart("body touches the projective ball boundary".into()));
        }
        for &(xr, wr) in gl_r.iter() {
            let r = 0.5 * s * (xr + 1.0);
            let jac = wphi * 0.5 * s * wr * r;
            let r2 = r * r;
            match geometry {
                Geometry::Euclidean | Geometry::Normed => {
                    acc[0] += jac * r * cp;
                    acc[1] += jac * r * sp;
                    mass += jac;
                }
                Geometry::Spherical => {
                    let lift = (1.0 + r2).sqrt();
                    let wv = (1.0 + r2).powf(-1.5);
                    acc[0] += jac * wv * r * cp / lift;
                    acc[1] += jac * wv * r * sp / lift;
                    acc[2] += jac * wv / lift;
                    mass += jac * wv;
                }
                Geometry::Hyperbolic => {
                    let lift = (1.0 - r2).sqrt();
                    let wv = (1.0 - r2).powf(-1.5);
                    acc[0] += jac * wv * r * cp / lift;
                    acc[1] += jac * wv * r * sp / lift;
                    acc[2] += jac * wv / lift;
                    mass += jac * wv;
                }
            }
        }
    }
    if mass <= 1e-300 {
        return Err(GeomError::Degenerate("zero-area body".into()));
    }
    let acc2 = [acc[0], acc[1], acc[2], acc[3]];
    Ok(centroid_from_acc(geometry, &acc2, mass, 2))
}

/// Maximum absolute first moment of the body over `n_dirs` random oriented
/// geodesic hyperplanes through `c`. Directions are drawn from a fixed
/// deterministic stream.
pub fn moment_condition_check(
    body: &RadialBody,
    c: &ChartPoint,
    n_dirs: usize,
    spec: &QuadratureSpec,
) -> Result<f64, GeomError> {
    let space = &body.space;
    let mut rng = ChaCha8Rng::seed_from_u64(0xE9_u64);
    let mut worst: f64 = 0.0;
    for _ in 0..n_dirs {
        let plane = random_plane_through(space, c, &mut rng)?;
        let m = plane_moment(body, &plane, spec)?;
        worst = worst.max(m.abs());
    }
    Ok(worst)
}

fn random_unit(rng: &mut ChaCha8Rng, n: usize) -> [f64; 4] {
    loop {
        let mut v = [0.0_f64; 4];
        let mut s = 0.0;
        for x in v.iter_mut().take(n) {
            *x = rng.gen_range(-1.0..1.0);
            s += *x * *x;
        }
        if s > 1e-4 && s < 1.0 {
            let inv = s.sqrt().recip();
            for x in v.iter_mut().take(n) {
                *x *= inv;
            }
            return v;
        }
    }
}

/// A random oriented geodesic hyperplane through `c`, built from the
/// embedded normal so the chart representation is exact.
fn random_plane_through(
    space: &SpaceKind,
    c: &ChartPoint,
    rng: &mut ChaCha8Rng,
) -> Result<OrientedGeodesicHyperplane, GeomError> {
    let dim = space.dim;
    match space.geometry {
        Geometry::Euclidean | Geometry::Normed => {
            let n = random_unit(rng, dim);
            let mut normal = [0.0; 3];
            normal[..dim].copy_from_slice(&n[..dim]);
            let b = crate::spaces::dotn(&normal, &c.coords, dim);
            Ok(OrientedGeodesicHyperplane::new(space, normal, b))
        }
        Geometry::Spherical => {
            let q = space.embed(c)?;
            loop {
                let w = random_unit(rng, dim + 1);
                let dot = crate::spaces::dotn(&w, &q, dim + 1);
                let mut nvec = [0.0; 4];
                let mut nn = 0.0;
                for k in 0..=dim {
                    nvec[k] = w[k] - dot * q[k];
                    nn += nvec[k] * nvec[k];
                }
                if nn < 1e-6 {
                    continue;
                }
                let inv = nn.sqrt().recip();
                for x in nvec.iter_mut().take(dim + 1) {
                    *x *= inv;
                }
                let mut normal = [0.0; 3];
                normal[..dim].copy_from_slice(&nvec[..dim]);
                let sp = crate::spaces::dotn(&normal, &normal, dim).sqrt();
                if sp < 1e-9 {
                    continue; // the polar great sphere has no chart normal
                }
                return Ok(OrientedGeodesicHyperplane::new(space, normal, -nvec[dim]));
            }
        }
        Geometry::Hyperbolic => {
            let q = space.embed(c)?;
            loop {
                let w = random_unit(rng, dim + 1);
                let ldot = crate::spaces::dotn(&w, &q, dim) - w[dim] * q[dim];
                let mut nvec = [0.0; 4];
                for k in 0..=dim {
                    nvec[k] = w[k] + ldot * q[k];
                }
                let ln = crate::spaces::dotn(&nvec, &nvec, dim) - nvec[dim] * nvec[dim];
                if ln < 1e-6 {
                    continue;
                }
                let inv = ln.sqrt().recip();
                for x in nvec.iter_mut().take(dim + 1) {
                    *x *= inv;
                }
                let mut normal = [0.0; 3];
                normal[..dim].copy_from_slice(&nvec[..dim]);
                return Ok(OrientedGeodesicHyperplane::new(space, normal, nvec[dim]));
            }
        }
    }
}

/// First moment of a 3D body with respect to an arbitrary oriented geodesic
/// hyperplane, by full chart quadrature of the signed distance against the
/// volume weight.
pub fn plane_moment(
    body: &RadialBody,
    plane: &OrientedGeodesicHyperplane,
    spec: &QuadratureSpec,
) -> Result<f64, GeomError> {
    let space = body.space.clone();
    let gl_t = gauss_legendre(spec.n_theta);
    let gl_r = gauss_legendre(spec.n_r);
    let wphi = 2.0 * PI / spec.n_phi as f64;
    let total = par_sum(spec.n_theta, spec.jobs, |i| {
        let (x, w) = gl_t[i];
        let theta = FRAC_PI_2 * x;
        let wt = w * FRAC_PI_2;
        let (st, ct) = theta.sin_cos();
        let mut row = 0.0;
        for j in 0..spec.n_phi {
            let phi = wphi * j as f64;
            let (sp, cp) = phi.sin_cos();
            let u = [ct * cp, ct * sp, st];
            let s = body.radial(theta, phi);
            for &(xr, wr) in gl_r.iter() {
                let r = 0.5 * s * (xr + 1.0);
                let p = ChartPoint { coords: [r * u[0], r * u[1], r * u[2]], dim: 3 };
                let sd = space.sin_signed_distance(plane, &p).unwrap_or(f64::NAN);
                let wv = space.volume_weight_r2(r * r);
                row += wphi * 0.5 * s * wr * sd * wv * r * r;
            }
        }
        wt * row * ct
    });
    if total.is_nan() {
        return Err(GeomError::OutOfChart("body leaves the chart domain".into()));
    }
    Ok(total)
}

/// 2D analogue of [`moment_condition_check`].
pub fn moment_condition_check_2d(
    body: &RadialBody2,
    c: &ChartPoint,
    n_dirs: usize,
    spec: &QuadratureSpec,
) -> Result<f64, GeomError> {
    let space = body.space.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0xE9_u64);
    let gl_r = gauss_legendre(spec.n_r);
    let np = spec.n_phi.max(256);
    let wphi = 2.0 * PI / np as f64;
    let mut worst: f64 = 0.0;
    for _ in 0..n_dirs {
        let plane = random_plane_through(&space, c, &mut rng)?;
        let mut total = 0.0;
        for j in 0..np {
            let phi = wphi * j as f64;
            let (sp, cp) = phi.sin_cos();
            let s = body.radial(phi);
            for &(xr, wr) in gl_r.iter() {
                let r = 0.5 * s * (xr + 1.0);
                let p = ChartPoint { coords: [r * cp, r * sp, 0.0], dim: 2 };
                let sd = space.sin_signed_distance(&plane, &p)?;
                let wv = space.volume_weight_r2(r * r);
                total += wphi * 0.5 * s * wr * sd * wv * r;
            }
        }
        worst = worst.max(total.abs());
    }
    Ok(worst)
}

/// Finds `c*` with `|M3(K(c*, d))| <= tol` by bracketed bisection with
/// secant acceleration. If no bracket is supplied, scans 32 points of
/// `[0.01, 1]` for a sign change.
pub fn find_centering_c(
    d: f64,
    r: f64,
    space: &SpaceKind,
    bracket: Option<(f64, f64)>,
    tol: f64,
    spec: &QuadratureSpec,
) -> Result<f64, GeomError> {
    let eval = |c: f64| -> Result<f64, GeomError> {
        let params = GombocParams::new(c, d, r, space.clone())?;
        let body = gomboc::build_body(&params)?;
        let fast = QuadratureSpec { richardson: false, ..*spec };
        Ok(first_moment_m3(&body, &fast)?.value)
    };
    let (mut lo, mut hi) = match bracket {
        Some(b) => b,
        None => {
            let n = 32;
            let cs: Vec<f64> = (0..n).map(|i| 0.01 + (1.0 - 0.01) * i as f64 / (n - 1) as f64).collect();
            let mut found = None;
            let mut prev: Option<(f64, f64)> = None;
            for &c in &cs {
                let v = eval(c)?;
                if let Some((pc, pv)) = prev {
                    if pv * v <= 0.0 {
                        found = Some((pc, c));
                        break;
                    }
                }
                prev = Some((c, v));
            }
            found.ok_or_else(|| {
                GeomError::NoSignChange(format!("M3 has no sign change on [0.01, 1] at d = {d}"))
            })?
        }
    };
    let mut flo = eval(lo)?;
    let mut fhi = eval(hi)?;
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo * fhi > 0.0 {
        return Err(GeomError::NoSignChange(format!(
            "M3({lo}) = {flo} and M3({hi}) = {fhi} have the same sign"
        )));
    }
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..200 {
        // secant proposal, kept only if it lands safely inside the bracket
        let sec = hi - fhi * (hi - lo) / (fhi - flo);
        let inside = sec > lo + 0.1 * (hi - lo) && sec < hi - 0.1 * (hi - lo);
        mid = if inside { sec } else { 0.5 * (lo + hi) };
        let fm = eval(mid)?;
        if fm.abs() <= tol || (hi - lo) < 1e-15 {
            return Ok(mid);
        }
        if flo * fm < 0.0 {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    Ok(mid)
}

/// One row of a parameter sweep.
#[derive(Clone, Debug)]
pub struct SweepRow {
    pub c: f64,
    pub d: f64,
    pub r: f64,
    pub space: String,
    pub m3: f64,
    pub err: f64,
}

/// Computes `M3` over the `(c, d)` grid and writes CSV with the fixed header
/// `c,d,R,space,M3,err,n_theta,n_phi,n_r`.
pub fn sweep_csv<W: std::io::Write>(
    out: &mut W,
    cs: &[f64],
    ds: &[f64],
    r: f64,
    space: &SpaceKind,
    spec: &QuadratureSpec,
) -> Result<Vec<SweepRow>, GeomError> {
    writeln!(out, "c,d,R,space,M3,err,n_theta,n_phi,n_r")
        .map_err(|e| GeomError::Io(e.to_string()))?;
    let mut rows = Vec::new();
    for &c in cs {
        for &d in ds {
            let params = GombocParams::new(c, d, r, space.clone())?;
            let body = gomboc::build_body(&params)?;
            let rep = first_moment_m3(&body, spec)?;
            writeln!(
                out,
                "{},{},{},{},{:.17e},{:.3e},{},{},{}",
                c,
                d,
                r,
                space.geometry.name(),
                rep.value,
                rep.error_estimate,
                spec.n_theta,
                spec.n_phi,
                spec.n_r
            )
            .map_err(|e| GeomError::Io(e.to_string()))?;
            rows.push(SweepRow {
                c,
                d,
                r,
                space: space.geometry.name().to_string(),
                m3: rep.value,
                err: rep.error_estimate,
            });
        }
    }
    Ok(rows)
}
