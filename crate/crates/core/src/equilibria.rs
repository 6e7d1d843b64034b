//! Equilibrium points of convex bodies resting on a geodesic hyperplane:
//! detection, classification, the two Poincaré-Hopf count identities,
//! Gaussian-curvature certification, Hausdorff distance to a ball, and the
//! end-to-end mono-monostatic certificate.
//!
//! An equilibrium point is a critical point of the distance from the
//! reference point (normally the centroid) to the boundary. For radial
//! bodies the distance is a strictly increasing function of the chart
//! radial value in every direction, so critical points are found on a
//! scalar field over the direction sphere. Coordinate singularities at the
//! parametrization poles are handled by repeating every computation in a
//! rotated secondary parametrization.

use crate::error::GeomError;
use crate::gomboc::{build_body, GombocParams, RadialBody, RadialBody2, SurfJet};
use crate::integrate::{self, QuadratureSpec};
use crate::spaces::{ChartIsometry, ChartPoint, Geometry, SpaceKind};
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::Arc;

/// Classification of a nondegenerate critical point by the signature of the
/// distance Hessian: local minimum, local maximum, or saddle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum EquilibriumKind {
    Stable,
    Unstable,
    Saddle,
    Degenerate,
}

/// One detected equilibrium point on the boundary.
#[derive(Clone, Debug, Serialize)]
pub struct EquilibriumPoint {
    /// Polar angle of the boundary direction (0 for plane bodies).
    pub theta: f64,
    /// Azimuth of the boundary direction.
    pub phi: f64,
    /// Geometry distance from the reference point to the boundary there.
    pub distance_value: f64,
    pub kind: EquilibriumKind,
    /// Eigenvalues of the distance Hessian in an orthonormal frame.
    pub hessian_eigenvalues: Vec<f64>,
}

/// Counts of equilibria by class, with the underlying points.
#[derive(Clone, Debug, Default, Serialize)]
pub struct EquilibriumCensus {
    pub s: usize,
    pub h: usize,
    pub u: usize,
    pub degenerate_count: usize,
    pub points: Vec<EquilibriumPoint>,
}

impl EquilibriumCensus {
    pub fn from_points(points: Vec<EquilibriumPoint>) -> Self {
        let mut c = EquilibriumCensus { points, ..Default::default() };
        for p in &c.points {
            match p.kind {
                EquilibriumKind::Stable => c.s += 1,
                EquilibriumKind::Unstable => c.u += 1,
                EquilibriumKind::Saddle => c.h += 1,
                EquilibriumKind::Degenerate => c.degenerate_count += 1,
            }
        }
        c
    }

    pub fn total(&self) -> usize {
        self.s + self.h + self.u + self.degenerate_count
    }
}

/// The Poincaré-Hopf identity for the census: `S - U = 0` on the circle,
/// `S - H + U = 2` on the sphere. A census with degenerate points is
/// inconclusive, reported as an error distinct from `false`.
pub fn poincare_hopf_check(census: &EquilibriumCensus, dim: usize) -> Result<bool, GeomError> {
    if census.degenerate_count > 0 {
        return Err(GeomError::Degenerate(format!(
            "census has {} degenerate points; count identity is inconclusive",
            census.degenerate_count
        )));
    }
    match dim {
        2 => Ok(census.s == census.u),
        3 => Ok(census.s + census.u == 2 + census.h),
        _ => Err(GeomError::InvalidParams(format!("dim = {dim} unsupported"))),
    }
}

/// Radial representation around the chart origin of the image of `body`
/// under `iso`, by per-direction root finding along the pulled-back ray.
pub fn transform_body(body: &RadialBody, iso: &ChartIsometry) -> Result<RadialBody, GeomError> {
    let inv = iso.inverse();
    let src = body.clone();
    let space = body.space.clone();
    let hyper = space.geometry == Geometry::Hyperbolic;
    let radial = move |theta: f64, phi: f64| -> f64 {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        let u = [ct * cp, ct * sp, st];
        let gap = |t: f64| -> f64 {
            let q = inv.apply(&ChartPoint { coords: [t * u[0], t * u[1], t * u[2]], dim: 3 });
            let r = q.norm();
            let (tq, pq) = dir_angles(&[
                if r == 0.0 { 1.0 } else { q.coords[0] / r },
                q.coords[1] / r.max(1e-300),
                q.coords[2] / r.max(1e-300),
            ]);
            r - src.radial(tq, pq)
        };
        // grow the bracket until the pulled-back point leaves the body
        let mut hi = 1e-3;
        let cap = if hyper { 1.0 - 1e-12 } else { 1e8 };
        let mut found = false;
        for _ in 0..200 {
            if gap(hi) > 0.0 {
                found = true;
                break;
            }
            hi = (hi * 1.7).min(cap);
            if hi >= cap && gap(hi) <= 0.0 {
                break;
            }
        }
        if !found && gap(hi) <= 0.0 {
            return f64::NAN;
        }
        let mut lo = 0.0;
        let (mut flo, mut fhi) = (gap(lo), gap(hi));
        for _ in 0..90 {
            // regula falsi with a bisection fallback keeps the bracket tight
            let mut mid = if fhi != flo { hi - fhi * (hi - lo) / (fhi - flo) } else { 0.5 * (lo + hi) };
            if !(mid > lo && mid < hi) {
                mid = 0.5 * (lo + hi);
            }
            let fm = gap(mid);
            if fm == 0.0 || (hi - lo) < 1e-15 * hi.max(1.0) {
                return mid;
            }
            if flo * fm < 0.0 {
                hi = mid;
                fhi = fm;
            } else {
                lo = mid;
                flo = fm;
            }
            // alternate with plain bisection to guarantee shrinkage
            let bis = 0.5 * (lo + hi);
            let fb = gap(bis);
            if flo * fb < 0.0 {
                hi = bis;
                fhi = fb;
            } else {
                lo = bis;
                flo = fb;
            }
        }
        0.5 * (lo + hi)
    };
    Ok(RadialBody::new(space, Arc::new(radial)))
}

/// The same body re-expressed radially around `reference`, which must be an
/// interior point.
pub fn recenter_body(body: &RadialBody, reference: &ChartPoint) -> Result<RadialBody, GeomError> {
    body.space.check_in_chart(reference)?;
    let rr = reference.norm();
    if rr > 0.0 {
        let (t, p) = dir_angles(&[
            reference.coords[0] / rr,
            reference.coords[1] / rr,
            reference.coords[2] / rr,
        ]);
        if rr >= body.radial(t, p) {
            return Err(GeomError::InvalidParams(
                "reference point is not interior to the body".into(),
            ));
        }
    }
    let iso = body.space.center_isometry(reference)?;
    transform_body(body, &iso)
}

fn dir_angles(u: &[f64; 3]) -> (f64, f64) {
    (u[2].clamp(-1.0, 1.0).asin(), u[1].atan2(u[0]))
}

/// The two parametrizations of the direction sphere. The rotated chart has
/// its coordinate poles on the `y`-axis, so the standard poles are regular
/// interior points there.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum DirChart {
    Standard,
    Rotated,
}

impl DirChart {
    fn dir(self, t: f64, p: f64) -> [f64; 3] {
        let (st, ct) = t.sin_cos();
        let (sp, cp) = p.sin_cos();
        match self {
            DirChart::Standard => [ct * cp, ct * sp, st],
            DirChart::Rotated => [ct * cp, st, ct * sp],
        }
    }

    /// Chart parameters of a unit direction.
    fn params(self, u: &[f64; 3]) -> (f64, f64) {
        match self {
            DirChart::Standard => dir_angles(u),
            DirChart::Rotated => (u[1].clamp(-1.0, 1.0).asin(), u[2].atan2(u[0])),
        }
    }

    /// Chart whose coordinate poles are farthest from `u`.
    fn best_for(u: &[f64; 3]) -> DirChart {
        if u[2].abs() < 0.8 {
            DirChart::Standard
        } else {
            DirChart::Rotated
        }
    }
}

/// The scalar field whose critical points are the equilibria: the chart
/// radial value in the constant-curvature and flat cases (the geometry
/// distance is a strictly increasing transform of it, so critical sets and
/// Hessian signatures at critical points agree), and the gauge in the
/// normed case.
#[derive(Clone)]
struct DirField {
    body: RadialBody,
}

impl DirField {
    fn value_dir(&self, u: &[f64; 3]) -> f64 {
        let (t, p) = dir_angles(u);
        let r = self.body.radial(t, p);
        match self.body.space.geometry {
            Geometry::Normed => r / self.body.space.profile.as_ref().unwrap().value(t),
            _ => r,
        }
    }

    fn value(&self, chart: DirChart, t: f64, p: f64) -> f64 {
        self.value_dir(&chart.dir(t, p))
    }

    /// Geometry distance from the origin to the boundary in direction `u`.
    fn distance_dir(&self, u: &[f64; 3]) -> f64 {
        let v = self.value_dir(u);
        match self.body.space.geometry {
            Geometry::Spherical => v.atan(),
            Geometry::Hyperbolic => v.atanh(),
            Geometry::Euclidean | Geometry::Normed => v,
        }
    }

    /// Gradient in the orthonormal frame of `chart` at `(t, p)`.
    fn grad(&self, chart: DirChart, t: f64, p: f64, h: f64) -> [f64; 2] {
        let dt = (self.value(chart, t + h, p) - self.value(chart, t - h, p)) / (2.0 * h);
        let dp = (self.value(chart, t, p + h) - self.value(chart, t, p - h)) / (2.0 * h);
        [dt, dp / t.cos()]
    }

    /// Parameter-space gradient and Hessian at `(t, p)`.
    fn jet(&self, chart: DirChart, t: f64, p: f64, h: f64) -> ([f64; 2], [[f64; 2]; 2]) {
        let f = |a: f64, b: f64| self.value(chart, a, b);
        let v = f(t, p);
        let (tp, tm) = (f(t + h, p), f(t - h, p));
        let (pp, pm) = (f(t, p + h), f(t, p - h));
        let g = [(tp - tm) / (2.0 * h), (pp - pm) / (2.0 * h)];
        let dtt = (tp - 2.0 * v + tm) / (h * h);
        let dpp = (pp - 2.0 * v + pm) / (h * h);
        let dtp =
            (f(t + h, p + h) - f(t + h, p - h) - f(t - h, p + h) + f(t - h, p - h)) / (4.0 * h * h);
        (g, [[dtt, dtp], [dtp, dpp]])
    }
}

fn eigen2(m: &[[f64; 2]; 2]) -> (f64, f64) {
    let mean = 0.5 * (m[0][0] + m[1][1]);
    let disc = (0.5 * (m[0][0] - m[1][1])).hypot(m[0][1]);
    (mean - disc, mean + disc)
}

/// Damped Newton polish of a critical-point candidate, switching direction
/// charts as needed. Returns the polished direction and the remaining
/// orthonormal gradient norm.
fn polish(field: &DirField, u0: [f64; 3], tol: f64, h: f64) -> ([f64; 3], f64) {
    let mut u = u0;
    for _ in 0..60 {
        let chart = DirChart::best_for(&u);
        let (mut t, p) = chart.params(&u);
        t = t.clamp(-FRAC_PI_2 + 1e-6, FRAC_PI_2 - 1e-6);
        let (g, hs) = field.jet(chart, t, p, h);
        let gn = (g[0].hypot(g[1] / t.cos())).abs();
        if gn <= tol {
            return (u, gn);
        }
        let det = hs[0][0] * hs[1][1] - hs[0][1] * hs[0][1];
        let (mut dt, mut dp) = if det.abs() > 1e-300 {
            (
                -(hs[1][1] * g[0] - hs[0][1] * g[1]) / det,
                -(hs[0][0] * g[1] - hs[0][1] * g[0]) / det,
            )
        } else {
            (-g[0], -g[1])
        };
        // cap the step at a quarter turn to stay on the sphere
        let step = dt.hypot(dp * t.cos());
        if step > 0.5 {
            let sc = 0.5 / step;
            dt *= sc;
            dp *= sc;
        }
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..20 {
            let (tn, pn) = (t + lambda * dt, p + lambda * dp);
            let un = chart.dir(tn.clamp(-FRAC_PI_2 + 1e-9, FRAC_PI_2 - 1e-9), pn);
            let (tc, pc) = chart.params(&un);
            let gnew = field.grad(chart, tc.clamp(-FRAC_PI_2 + 1e-6, FRAC_PI_2 - 1e-6), pc, h);
            if gnew[0].hypot(gnew[1]) < gn {
                u = un;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted {
            let chart2 = DirChart::best_for(&u);
            let (t2, p2) = chart2.params(&u);
            let g2 = field.grad(chart2, t2.clamp(-FRAC_PI_2 + 1e-6, FRAC_PI_2 - 1e-6), p2, h);
            return (u, g2[0].hypot(g2[1]));
        }
    }
    let chart = DirChart::best_for(&u);
    let (t, p) = chart.params(&u);
    let g = field.grad(chart, t.clamp(-FRAC_PI_2 + 1e-6, FRAC_PI_2 - 1e-6), p, h);
    (u, g[0].hypot(g[1]))
}

const MERGE_ANGLE: f64 = 1e-3;
const FD_STEP: f64 = 1e-5;
const HESS_STEP: f64 = 1e-4;
const DEGENERATE_REL: f64 = 1e-8;

fn classify(field: &DirField, u: &[f64; 3]) -> (EquilibriumKind, Vec<f64>) {
    let chart = DirChart::best_for(u);
    let (t, p) = chart.params(u);
    let (_, hs) = field.jet(chart, t, p, HESS_STEP);
    // orthonormal-frame Hessian; gradient corrections vanish at critical
    // points, so the parameter Hessian scaled by the metric suffices
    let ct = t.cos();
    let m = [[hs[0][0], hs[0][1] / ct], [hs[0][1] / ct, hs[1][1] / (ct * ct)]];
    let (l1, l2) = eigen2(&m);
    let scale = l1.abs().max(l2.abs());
    let kind = if scale == 0.0 || l1.abs().min(l2.abs()) < DEGENERATE_REL * scale {
        EquilibriumKind::Degenerate
    } else if l1 > 0.0 {
        EquilibriumKind::Stable
    } else if l2 < 0.0 {
        EquilibriumKind::Unstable
    } else {
        EquilibriumKind::Saddle
    };
    (kind, vec![l1, l2])
}

/// Locates and classifies all equilibrium points of the body with respect
/// to `reference`: dense gradient scan over both direction charts, damped
/// Newton polish, merge of duplicates, Hessian classification.
///
/// `grid` controls the polar scan resolution (azimuthal is twice that);
/// `tol` is the gradient norm cutoff relative to the field's variation.
pub fn find_equilibria(
    body: &RadialBody,
    reference: &ChartPoint,
    grid: usize,
    tol: f64,
) -> Result<EquilibriumCensus, GeomError> {
    if body.space.dim != 3 {
        return Err(GeomError::InvalidParams("find_equilibria requires a 3D body".into()));
    }
    let centered = if reference.norm() == 0.0 {
        body.clone()
    } else {
        recenter_body(body, reference)?
    };
    let field = DirField { body: centered };

    // field scale, for relative thresholds and the constant-profile case
    let nt = grid.max(16);
    let np = 2 * nt;
    let (mut fmin, mut fmax) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..=nt {
        let t = -FRAC_PI_2 + PI * i as f64 / nt as f64;
        for j in 0..np {
            let p = 2.0 * PI * j as f64 / np as f64;
            let v = field.value(DirChart::Standard, t, p);
            if !v.is_finite() {
                return Err(GeomError::OutOfChart(
                    "recentred radial function is unbounded in some direction".into(),
                ));
            }
            fmin = fmin.min(v);
            fmax = fmax.max(v);
        }
    }
    let variation = fmax - fmin;
    if variation < 1e-10 * fmax.abs().max(1e-10) {
        // constant profile: every boundary point is critical
        let pt = EquilibriumPoint {
            theta: 0.0,
            phi: 0.0,
            distance_value: field.distance_dir(&[1.0, 0.0, 0.0]),
            kind: EquilibriumKind::Degenerate,
            hessian_eigenvalues: vec![0.0, 0.0],
        };
        return Ok(EquilibriumCensus::from_points(vec![pt]));
    }
    let gtol = tol * variation.max(1e-12);

    // candidate directions: local minima of the gradient norm in the
    // regular band of each chart, plus the standard poles explicitly
    let mut candidates: Vec<[f64; 3]> = vec![[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]];
    let band = FRAC_PI_2 - 0.2;
    for chart in [DirChart::Standard, DirChart::Rotated] {
        let rows = nt.max(8);
        let cols = np;
        let mut gn = vec![vec![0.0; cols]; rows];
        for (i, row) in gn.iter_mut().enumerate() {
            let t = -band + 2.0 * band * i as f64 / (rows - 1) as f64;
            for (j, cell) in row.iter_mut().enumerate() {
                let p = 2.0 * PI * j as f64 / cols as f64;
                let g = field.grad(chart, t, p, FD_STEP);
                *cell = g[0].hypot(g[1]);
            }
        }
        for i in 0..rows {
            let t = -band + 2.0 * band * i as f64 / (rows - 1) as f64;
            for j in 0..cols {
                let v = gn[i][j];
                let mut is_min = true;
                for di in -1_i64..=1 {
                    for dj in -1_i64..=1 {
                        if di == 0 && dj == 0 {
                            continue;
                        }
                        let ii = i as i64 + di;
                        if ii < 0 || ii >= rows as i64 {
                            continue;
                        }
                        let jj = (j as i64 + dj).rem_euclid(cols as i64);
                        if gn[ii as usize][jj as usize] < v {
                            is_min = false;
                        }
                    }
                }
                // only basins already close to critical at grid resolution
                let h_grid = 2.0 * band / (rows - 1) as f64;
                if is_min && v < 20.0 * variation * h_grid {
                    let p = 2.0 * PI * j as f64 / cols as f64;
                    candidates.push(chart.dir(t, p));
                }
            }
        }
    }

    // polish, then merge by direction angle
    let mut found: Vec<([f64; 3], f64)> = Vec::new();
    for u0 in candidates {
        let (u, gn) = polish(&field, u0, gtol, FD_STEP);
        if gn > gtol {
            if gn < 1e3 * gtol {
                // near-critical but not converged: keep as degenerate below
                found.push((u, gn));
            }
            continue;
        }
        found.push((u, gn));
    }
    let mut merged: Vec<([f64; 3], f64)> = Vec::new();
    for (u, gn) in found {
        let mut dup = false;
        for (v, vg) in merged.iter_mut() {
            let dot = (u[0] * v[0] + u[1] * v[1] + u[2] * v[2]).clamp(-1.0, 1.0);
            if dot.acos() < MERGE_ANGLE {
                if gn < *vg {
                    *v = u;
                    *vg = gn;
                }
                dup = true;
                break;
            }
        }
        if !dup {
            merged.push((u, gn));
        }
    }

    let mut points = Vec::new();
    for (u, gn) in merged {
        let (t, p) = dir_angles(&u);
        let (kind, eig) = if gn > gtol {
            (EquilibriumKind::Degenerate, vec![0.0, 0.0])
        } else {
            classify(&field, &u)
        };
        points.push(EquilibriumPoint {
            theta: t,
            phi: if p < 0.0 { p + 2.0 * PI } else { p },
            distance_value: field.distance_dir(&u),
            kind,
            hessian_eigenvalues: eig,
        });
    }
    points.sort_by(|a, b| {
        a.theta.partial_cmp(&b.theta).unwrap().then(a.phi.partial_cmp(&b.phi).unwrap())
    });
    Ok(EquilibriumCensus::from_points(points))
}

/// Distance-from-reference profile over boundary parameters, after moving
/// `reference` to the chart origin by an isometry.
pub struct DistanceProfile {
    field: DirField,
}

impl DistanceProfile {
    pub fn value(&self, theta: f64, phi: f64) -> f64 {
        self.field.distance_dir(&DirChart::Standard.dir(theta, phi))
    }

    /// Chart radial value in the same direction, for monotonicity checks.
    pub fn chart_radial(&self, theta: f64, phi: f64) -> f64 {
        self.field.body.radial(theta, phi)
    }
}

pub fn distance_profile(
    body: &RadialBody,
    reference: &ChartPoint,
) -> Result<DistanceProfile, GeomError> {
    let centered = if reference.norm() == 0.0 {
        body.clone()
    } else {
        recenter_body(body, reference)?
    };
    Ok(DistanceProfile { field: DirField { body: centered } })
}

/// Equilibria of a plane body: centroid, recentering, critical points of
/// the 1D distance profile over the direction angle. Spherical bodies must
/// lie in the open hemisphere around their centroid.
pub fn count_equilibria_2d(
    body: &RadialBody2,
    grid: usize,
    tol: f64,
) -> Result<EquilibriumCensus, GeomError> {
    let space = body.space.clone();
    let qspec = QuadratureSpec::default();
    let c = integrate::centroid2(body, &qspec)?;
    let centered = recenter_body2(body, &c)?;
    let prof = space.profile.clone();
    let dist = move |phi: f64| -> f64 {
        let r = centered.radial(phi);
        match space.geometry {
            Geometry::Spherical => r.atan(),
            Geometry::Hyperbolic => r.atanh(),
            Geometry::Euclidean => r,
            Geometry::Normed => r / prof.as_ref().unwrap().value(phi),
        }
    };

    let n = grid.max(512);
    let hphi = 2.0 * PI / n as f64;
    let vals: Vec<f64> = (0..n).map(|j| dist(hphi * j as f64)).collect();
    for v in &vals {
        if !v.is_finite() {
            return Err(GeomError::OutOfChart(
                "body is not contained in the open hemisphere around its centroid".into(),
            ));
        }
    }
    let (vmin, vmax) = vals.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| {
        (a.min(v), b.max(v))
    });
    let variation = vmax - vmin;
    if variation < 1e-10 * vmax.abs().max(1e-10) {
        let pt = EquilibriumPoint {
            theta: 0.0,
            phi: 0.0,
            distance_value: vals[0],
            kind: EquilibriumKind::Degenerate,
            hessian_eigenvalues: vec![0.0],
        };
        return Ok(EquilibriumCensus::from_points(vec![pt]));
    }

    // local extrema of the sampled profile bracket the derivative roots;
    // each bracket is then bisected on the derivative itself
    let h = 1e-6;
    let dd = |p: f64| (dist(p + h) - dist(p - h)) / (2.0 * h);
    let mut roots: Vec<f64> = Vec::new();
    for j in 0..n {
        let (vm, v0, vp) = (vals[(j + n - 1) % n], vals[j], vals[(j + 1) % n]);
        let is_extremum = (v0 <= vm && v0 < vp) || (v0 >= vm && v0 > vp);
        if !is_extremum {
            continue;
        }
        let p = hphi * j as f64;
        // a close extremal pair can put two derivative roots inside the
        // two-cell bracket, so try the one-cell sub-brackets first and
        // require the crossing direction matching the extremum type
        let rising = v0 <= vm && v0 < vp;
        let brackets = [(p - hphi, p), (p, p + hphi), (p - hphi, p + hphi)];
        let mut resolved = false;
        for &(mut lo, mut hi) in &brackets {
            let mut flo = dd(lo);
            let fhi = dd(hi);
            let crosses = if rising { flo < 0.0 && fhi >= 0.0 } else { flo > 0.0 && fhi <= 0.0 };
            if !crosses {
                continue;
            }
            for _ in 0..45 {
                let mid = 0.5 * (lo + hi);
                let fm = dd(mid);
                if flo * fm <= 0.0 {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            roots.push(0.5 * (lo + hi));
            resolved = true;
            break;
        }
        if !resolved {
            // flat sample tie; fall back to the grid point itself
            roots.push(p);
        }
    }
    // merge wrap-around duplicates
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut merged: Vec<f64> = Vec::new();
    for r in roots {
        let wrapped = r.rem_euclid(2.0 * PI);
        if merged.iter().any(|&m| {
            let d = (m - wrapped).abs();
            d.min(2.0 * PI - d) < MERGE_ANGLE
        }) {
            continue;
        }
        merged.push(wrapped);
    }

    let hh = 1e-4;
    let gtol = tol * variation.max(1e-12);
    let mut points = Vec::new();
    for p in merged {
        let d2 = (dist(p + hh) - 2.0 * dist(p) + dist(p - hh)) / (hh * hh);
        let d1 = dd(p);
        let kind = if d1.abs() > gtol.max(1e-8) {
            EquilibriumKind::Degenerate
        } else if d2.abs() < DEGENERATE_REL * variation.max(1e-12) {
            EquilibriumKind::Degenerate
        } else if d2 > 0.0 {
            EquilibriumKind::Stable
        } else {
            EquilibriumKind::Unstable
        };
        points.push(EquilibriumPoint {
            theta: 0.0,
            phi: p,
            distance_value: dist(p),
            kind,
            hessian_eigenvalues: vec![d2],
        });
    }
    Ok(EquilibriumCensus::from_points(points))
}

/// 2D analogue of [`recenter_body`].
pub fn recenter_body2(body: &RadialBody2, reference: &ChartPoint) -> Result<RadialBody2, GeomError> {
    let space = body.space.clone();
    space.check_in_chart(reference)?;
    let rr = reference.norm();
    if rr > 0.0 {
        let ang = reference.coords[1].atan2(reference.coords[0]);
        if rr >= body.radial(ang) {
            return Err(GeomError::InvalidParams(
                "reference point is not interior to the body".into(),
            ));
        }
    }
    let iso = space.center_isometry(reference)?;
    let inv = iso.inverse();
    let src = body.clone();
    let hyper = space.geometry == Geometry::Hyperbolic;
    let spherical = space.geometry == Geometry::Spherical;
    let radial = move |phi: f64| -> f64 {
        let (sp, cp) = phi.sin_cos();
        let gap = |t: f64| -> f64 {
            let q = inv.apply(&ChartPoint::new2(t * cp, t * sp));
            let r = q.norm();
            let ang = q.coords[1].atan2(q.coords[0]);
            r - src.radial(ang)
        };
        let mut hi = 1e-2;
        let cap = if hyper { 1.0 - 1e-12 } else { 1e8 };
        let mut found = false;
        for _ in 0..200 {
            if gap(hi) > 0.0 {
                found = true;
                break;
            }
            hi = (hi * 1.7).min(cap);
            if hi >= cap && gap(hi) <= 0.0 {
                break;
            }
        }
        if !found && gap(hi) <= 0.0 {
            return if spherical { f64::INFINITY } else { f64::NAN };
        }
        let (mut lo, mut flo) = (0.0, gap(0.0));
        for _ in 0..55 {
            let mid = 0.5 * (lo + hi);
            let fm = gap(mid);
            if flo * fm <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
                flo = fm;
            }
        }
        0.5 * (lo + hi)
    };
    Ok(RadialBody2::new(space, Arc::new(radial)))
}

/// Gaussian curvature of the chart boundary surface at boundary parameters
/// `(theta, phi)`, computed from the first and second fundamental forms of
/// the parametric surface in the ambient Euclidean chart. Positive
/// curvature everywhere certifies strict convexity of the chart body, which
/// in both curved charts is equivalent to geodesic convexity.
pub fn gaussian_curvature(body: &RadialBody, theta: f64, phi: f64) -> Result<f64, GeomError> {
    let u = DirChart::Standard.dir(theta, phi);
    let chart = DirChart::best_for(&u);
    let (t, p) = chart.params(&u);
    let jet = surface_jet(body, chart, t, p);
    if !jet.v.is_finite() || !jet.dtt.is_finite() {
        return Err(GeomError::Degenerate("non-finite surface partials".into()));
    }
    Ok(curvature_from_jet(&jet, t, p))
}

/// Radial jet in the given direction chart: the body's own jet in the
/// standard chart, finite differences of the reparametrized radial function
/// otherwise.
fn surface_jet(body: &RadialBody, chart: DirChart, t: f64, p: f64) -> SurfJet {
    match chart {
        DirChart::Standard => body.jet(t, p),
        DirChart::Rotated => {
            let f = |a: f64, b: f64| {
                let (tt, pp) = dir_angles(&DirChart::Rotated.dir(a, b));
                body.radial(tt, pp)
            };
            let h = 1e-4;
            let v = f(t, p);
            let (tp, tm) = (f(t + h, p), f(t - h, p));
            let (pp, pm) = (f(t, p + h), f(t, p - h));
            SurfJet {
                v,
                dt: (tp - tm) / (2.0 * h),
                dp: (pp - pm) / (2.0 * h),
                dtt: (tp - 2.0 * v + tm) / (h * h),
                dpp: (pp - 2.0 * v + pm) / (h * h),
                dtp: (f(t + h, p + h) - f(t + h, p - h) - f(t - h, p + h) + f(t - h, p - h))
                    / (4.0 * h * h),
            }
        }
    }
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot3(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn curvature_from_jet(jet: &SurfJet, t: f64, p: f64) -> f64 {
    let (st, ct) = t.sin_cos();
    let (sp, cp) = p.sin_cos();
    let u = [ct * cp, ct * sp, st];
    let ut = [-st * cp, -st * sp, ct];
    let up = [-ct * sp, ct * cp, 0.0];
    let utt = [-u[0], -u[1], -u[2]];
    let utp = [st * sp, -st * cp, 0.0];
    let upp = [-ct * cp, -ct * sp, 0.0];
    let r = jet.v;
    let xt = [
        jet.dt * u[0] + r * ut[0],
        jet.dt * u[1] + r * ut[1],
        jet.dt * u[2] + r * ut[2],
    ];
    let xp = [
        jet.dp * u[0] + r * up[0],
        jet.dp * u[1] + r * up[1],
        jet.dp * u[2] + r * up[2],
    ];
    let mut xtt = [0.0; 3];
    let mut xtp = [0.0; 3];
    let mut xpp = [0.0; 3];
    for k in 0..3 {
        xtt[k] = jet.dtt * u[k] + 2.0 * jet.dt * ut[k] + r * utt[k];
        xtp[k] = jet.dtp * u[k] + jet.dt * up[k] + jet.dp * ut[k] + r * utp[k];
        xpp[k] = jet.dpp * u[k] + 2.0 * jet.dp * up[k] + r * upp[k];
    }
    let e = dot3(&xt, &xt);
    let f = dot3(&xt, &xp);
    let g = dot3(&xp, &xp);
    let mut nvec = cross(&xt, &xp);
    let nn = dot3(&nvec, &nvec).sqrt();
    for x in nvec.iter_mut() {
        *x /= nn;
    }
    let l = dot3(&nvec, &xtt);
    let m = dot3(&nvec, &xtp);
    let nq = dot3(&nvec, &xpp);
    (l * nq - m * m) / (e * g - f * f)
}

/// Grid minimum of the Gaussian curvature, with its location.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct CurvatureReport {
    pub min: f64,
    pub theta: f64,
    pub phi: f64,
}

pub fn min_curvature(body: &RadialBody, grid: usize) -> Result<CurvatureReport, GeomError> {
    let nt = grid.max(16);
    let np = 2 * nt;
    let band = FRAC_PI_2 - 0.2;
    let mut best = CurvatureReport { min: f64::INFINITY, theta: 0.0, phi: 0.0 };
    let mut consider = |k: f64, t: f64, p: f64| {
        if k < best.min {
            best = CurvatureReport { min: k, theta: t, phi: p };
        }
    };
    for chart in [DirChart::Standard, DirChart::Rotated] {
        for i in 0..nt {
            let t = -band + 2.0 * band * i as f64 / (nt - 1) as f64;
            for j in 0..np {
                let p = 2.0 * PI * j as f64 / np as f64;
                let jet = surface_jet(body, chart, t, p);
                if !jet.v.is_finite() {
                    return Err(GeomError::Degenerate("non-finite surface partials".into()));
                }
                let k = curvature_from_jet(&jet, t, p);
                let u = chart.dir(t, p);
                let (ts, ps) = dir_angles(&u);
                consider(k, ts, ps);
            }
        }
    }
    for pole in [FRAC_PI_2, -FRAC_PI_2] {
        let k = gaussian_curvature(body, pole, 0.0)?;
        consider(k, pole, 0.0);
    }
    Ok(best)
}

/// Largest `d <= 0.5` such that the whole family slice over `c` in
/// `c_range` stays strictly convex, with a curvature margin of at least
/// `1e-6` at every grid point. Binary search on `d`; never fails, but the
/// result may be very small.
pub fn find_dstar(c_range: (f64, f64), r: f64, space: &SpaceKind, grid: usize) -> f64 {
    let cs: Vec<f64> = {
        let n = grid.max(3);
        (0..n)
            .map(|i| c_range.0 + (c_range.1 - c_range.0) * i as f64 / (n - 1) as f64)
            .collect()
    };
    let ok = |d: f64| -> bool {
        for &c in &cs {
            let params = match GombocParams::new(c, d, r, space.clone()) {
                Ok(p) => p,
                Err(_) => return false,
            };
            let body = match build_body(&params) {
                Ok(b) => b,
                Err(_) => return false,
            };
            match min_curvature(&body, 32) {
                Ok(rep) if rep.min > 1e-6 => {}
                _ => return false,
            }
        }
        true
    };
    if ok(0.5) {
        return 0.5;
    }
    let (mut lo, mut hi) = (0.0, 0.5);
    for _ in 0..25 {
        let mid = 0.5 * (lo + hi);
        if mid == 0.0 {
            break;
        }
        if ok(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Geometry Hausdorff distance between the body and the centered geodesic
/// ball of radius `r_ball`. For radially parametrized bodies around a
/// common center this is the maximum over directions of the distance gap,
/// evaluated on a dense grid with a Lipschitz safety margin.
pub fn hausdorff_to_ball(body: &RadialBody, r_ball: f64) -> Result<f64, GeomError> {
    let field = DirField { body: body.clone() };
    let ball_dist = match body.space.geometry {
        Geometry::Spherical => r_ball.atan(),
        Geometry::Hyperbolic => r_ball.atanh(),
        Geometry::Euclidean | Geometry::Normed => r_ball,
    };
    let nt = 256;
    let np = 512;
    let ht = PI / nt as f64;
    let mut worst: f64 = 0.0;
    let mut lips: f64 = 0.0;
    let mut prev_col = vec![0.0; np];
    for i in 0..=nt {
        let t = -FRAC_PI_2 + PI * i as f64 / nt as f64;
        let ct = t.cos();
        let mut col = vec![0.0; np];
        for (j, slot) in col.iter_mut().enumerate() {
            let p = 2.0 * PI * j as f64 / np as f64;
            let v = field.distance_dir(&DirChart::Standard.dir(t, p));
            if !v.is_finite() {
                return Err(GeomError::OutOfChart("boundary leaves the chart".into()));
            }
            *slot = v;
            worst = worst.max((v - ball_dist).abs());
        }
        for j in 0..np {
            if i > 0 {
                lips = lips.max((col[j] - prev_col[j]).abs() / ht);
            }
            let arc = ct * 2.0 * PI / np as f64;
            if arc > 1e-6 {
                lips = lips.max((col[(j + 1) % np] - col[j]).abs() / arc);
            }
        }
        prev_col = col;
    }
    Ok(worst + 0.5 * lips * ht)
}

/// Machine-readable result of the full mono-monostatic pipeline. Condition
/// keys follow the emitted JSON: centering (A), centroid residual (B),
/// equilibrium census S=1, H=0, U=1 (C), strict convexity (D), Hausdorff
/// closeness (E).
#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub params: CertificateParams,
    pub c_star: f64,
    pub centroid_residual: f64,
    pub census: CensusCounts,
    pub min_curvature: f64,
    pub hausdorff: f64,
    pub pass: PassFlags,
    pub errors: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateParams {
    pub c: f64,
    pub d: f64,
    #[serde(rename = "R")]
    pub r: f64,
    pub space: String,
    pub eps: f64,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CensusCounts {
    #[serde(rename = "S")]
    pub s: usize,
    #[serde(rename = "H")]
    pub h: usize,
    #[serde(rename = "U")]
    pub u: usize,
    pub degenerate: usize,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct PassFlags {
    #[serde(rename = "A")]
    pub a: bool,
    #[serde(rename = "B")]
    pub b: bool,
    #[serde(rename = "C")]
    pub c: bool,
    #[serde(rename = "D")]
    pub d: bool,
    #[serde(rename = "E")]
    pub e: bool,
}

impl PassFlags {
    pub fn all(&self) -> bool {
        self.a && self.b && self.c && self.d && self.e
    }
}

/// Runs the full pipeline at the given `d`: center the family in `c`,
/// rebuild at `c*`, then verify the centroid residual, the equilibrium
/// census, strict convexity and Hausdorff closeness to the reference ball.
/// Stage failures are recorded in the certificate, never thrown.
pub fn certify_mono_monostatic(params: &GombocParams, eps: f64) -> Certificate {
    let mut errors = Vec::new();
    let mut pass = PassFlags { a: false, b: false, c: false, d: false, e: false };
    let cert = |c_star: f64,
                    residual: f64,
                    census: CensusCounts,
                    min_k: f64,
                    hausdorff: f64,
                    pass: PassFlags,
                    errors: Vec<String>| {
        Certificate {
            params: CertificateParams {
                c: params.c,
                d: params.d,
                r: params.r,
                space: params.space.geometry.name().to_string(),
                eps,
            },
            c_star,
            centroid_residual: residual,
            census,
            min_curvature: min_k,
            hausdorff,
            pass,
            errors,
        }
    };
    let empty_census = CensusCounts { s: 0, h: 0, u: 0, degenerate: 0 };
    let qspec = QuadratureSpec::default();

    // (A) centering
    let c_star = match integrate::find_centering_c(params.d, params.r, &params.space, None, 1e-10, &qspec) {
        Ok(c) => {
            pass.a = true;
            c
        }
        Err(e) => {
            errors.push(format!("centering: {e}"));
            return cert(f64::NAN, f64::NAN, empty_census, f64::NAN, f64::NAN, pass, errors);
        }
    };
    let body = match GombocParams::new(c_star, params.d, params.r, params.space.clone())
        .and_then(|p| build_body(&p))
    {
        Ok(b) => b,
        Err(e) => {
            errors.push(format!("build at c*: {e}"));
            return cert(c_star, f64::NAN, empty_census, f64::NAN, f64::NAN, pass, errors);
        }
    };

    // (B) centroid residual
    let residual = match integrate::centroid(&body, &qspec)
        .and_then(|c| body.space.dist_from_origin(&c))
    {
        Ok(r) => {
            pass.b = r < 1e-6;
            r
        }
        Err(e) => {
            errors.push(format!("centroid: {e}"));
            f64::NAN
        }
    };

    // (C) census
    let census = match find_equilibria(&body, &ChartPoint::origin(3), 128, 1e-7) {
        Ok(cen) => {
            let counts = CensusCounts {
                s: cen.s,
                h: cen.h,
                u: cen.u,
                degenerate: cen.degenerate_count,
            };
            pass.c = cen.s == 1 && cen.h == 0 && cen.u == 1 && cen.degenerate_count == 0;
            counts
        }
        Err(e) => {
            errors.push(format!("equilibria: {e}"));
            empty_census
        }
    };

    // (D) convexity
    let min_k = match min_curvature(&body, 64) {
        Ok(rep) => {
            pass.d = rep.min > 0.0;
            rep.min
        }
        Err(e) => {
            errors.push(format!("curvature: {e}"));
            f64::NAN
        }
    };

    // (E) Hausdorff
    let hd = match hausdorff_to_ball(&body, params.r) {
        Ok(h) => {
            pass.e = h <= eps;
            h
        }
        Err(e) => {
            errors.push(format!("hausdorff: {e}"));
            f64::NAN
        }
    };

    cert(c_star, residual, census, min_k, hd, pass, errors)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spaces::NormProfile;

    fn ellipsoid_body(a: f64, b: f64, c: f64) -> RadialBody {
        RadialBody::new(
            SpaceKind::euclidean(3),
            Arc::new(move |t: f64, p: f64| {
                let u = DirChart::Standard.dir(t, p);
                1.0 / ((u[0] / a).powi(2) + (u[1] / b).powi(2) + (u[2] / c).powi(2)).sqrt()
            }),
        )
    }

    #[test]
    fn poincare_hopf_identities() {
        let census = |s: usize, h: usize, u: usize| EquilibriumCensus {
            s,
            h,
            u,
            degenerate_count: 0,
            points: Vec::new(),
        };
        assert!(poincare_hopf_check(&census(1, 0, 1), 3).unwrap());
        assert!(poincare_hopf_check(&census(2, 2, 2), 3).unwrap());
        assert!(!poincare_hopf_check(&census(2, 0, 1), 2).unwrap());
        let mut degen = census(1, 0, 1);
        degen.degenerate_count = 1;
        assert!(poincare_hopf_check(&degen, 3).is_err());
    }

    #[test]
    fn family_has_exactly_two_polar_equilibria() {
        for space in [
            SpaceKind::spherical(3),
            SpaceKind::hyperbolic(3),
            SpaceKind::euclidean(3),
            SpaceKind::normed(3, NormProfile::superellipsoid(4.0)),
        ] {
            let r = if space.geometry == Geometry::Hyperbolic { 0.5 } else { 1.0 };
            let params = GombocParams::new(0.5, 0.1, r, space.clone()).unwrap();
            let body = build_body(&params).unwrap();
            let census = find_equilibria(&body, &ChartPoint::origin(3), 64, 1e-7).unwrap();
            assert_eq!(
                (census.s, census.h, census.u, census.degenerate_count),
                (1, 0, 1, 0),
                "{space:?}: {census:?}"
            );
            let stable = census.points.iter().find(|p| p.kind == EquilibriumKind::Stable).unwrap();
            let unstable =
                census.points.iter().find(|p| p.kind == EquilibriumKind::Unstable).unwrap();
            assert!((stable.theta + FRAC_PI_2).abs() < 1e-6, "stable at {}", stable.theta);
            assert!((unstable.theta - FRAC_PI_2).abs() < 1e-6, "unstable at {}", unstable.theta);
            assert!(poincare_hopf_check(&census, 3).unwrap());
        }
    }

    #[test]
    fn ellipsoid_has_six_axis_equilibria() {
        let body = ellipsoid_body(2.0, 1.5, 1.0);
        let census = find_equilibria(&body, &ChartPoint::origin(3), 96, 1e-7).unwrap();
        assert_eq!(
            (census.s, census.h, census.u, census.degenerate_count),
            (2, 2, 2, 0),
            "{census:?}"
        );
        assert!(poincare_hopf_check(&census, 3).unwrap());
        // stable pair on the shortest (z) axis, unstable on the longest (x)
        for p in &census.points {
            match p.kind {
                EquilibriumKind::Stable => assert!(p.theta.abs() > FRAC_PI_2 - 1e-5, "{p:?}"),
                EquilibriumKind::Unstable => {
                    assert!(p.theta.abs() < 1e-5, "{p:?}");
                    let m = p.phi.rem_euclid(PI);
                    assert!(m < 1e-5 || m > PI - 1e-5, "{p:?}");
                }
                _ => {}
            }
        }
    }

    #[test]
    fn ball_census_is_degenerate() {
        let params = GombocParams::new(1.0, 0.0, 1.0, SpaceKind::spherical(3)).unwrap();
        let body = build_body(&params).unwrap();
        let census = find_equilibria(&body, &ChartPoint::origin(3), 32, 1e-7).unwrap();
        assert!(census.degenerate_count > 0);
        assert_eq!(census.s + census.h + census.u, 0);
    }

    #[test]
    fn distance_profile_values() {
        let params = GombocParams::new(0.3, 0.05, 1.0, SpaceKind::spherical(3)).unwrap();
        let body = build_body(&params).unwrap();
        let prof = distance_profile(&body, &ChartPoint::origin(3)).unwrap();
        for (t, p) in [(0.3, 1.0), (-1.2, 4.0), (0.0, 0.0)] {
            let expected = body.radial(t, p).atan();
            assert!((prof.value(t, p) - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn census_invariant_under_isometry() {
        let body = ellipsoid_body(1.3, 1.0, 0.8);
        let reference = ChartPoint::new3(0.1, -0.05, 0.08);
        let space = SpaceKind::euclidean(3);
        let iso = space.center_isometry(&reference).unwrap().inverse();
        let moved = transform_body(&body, &iso).unwrap();
        let base = find_equilibria(&body, &ChartPoint::origin(3), 64, 1e-6).unwrap();
        let after = find_equilibria(&moved, &reference, 64, 1e-6).unwrap();
        assert_eq!((base.s, base.h, base.u), (after.s, after.h, after.u));
    }

    #[test]
    fn recentred_spherical_body_keeps_census() {
        // family body moved off-center in the spherical chart, then handed
        // to find_equilibria with the moved reference
        let params = GombocParams::new(0.5, 0.1, 1.0, SpaceKind::spherical(3)).unwrap();
        let body = build_body(&params).unwrap();
        let reference = ChartPoint::new3(0.05, 0.02, -0.03);
        let iso = body.space.center_isometry(&reference).unwrap().inverse();
        let moved = transform_body(&body, &iso).unwrap();
        let census = find_equilibria(&moved, &reference, 64, 1e-6).unwrap();
        assert_eq!((census.s, census.h, census.u, census.degenerate_count), (1, 0, 1, 0));
    }

    #[test]
    fn two_dimensional_ellipse_census() {
        let body = RadialBody2::new(
            SpaceKind::euclidean(2),
            Arc::new(|phi: f64| {
                let (s, c) = phi.sin_cos();
                1.0 / ((c / 1.5).powi(2) + s.powi(2)).sqrt()
            }),
        );
        let census = count_equilibria_2d(&body, 512, 1e-6).unwrap();
        assert_eq!((census.s, census.u, census.degenerate_count), (2, 2, 0), "{census:?}");
        assert!(poincare_hopf_check(&census, 2).unwrap());
        // stable at the minor (y) axis, unstable at the major (x) axis
        for p in &census.points {
            let m = p.phi.rem_euclid(PI);
            match p.kind {
                EquilibriumKind::Stable => {
                    assert!((m - FRAC_PI_2).abs() < 1e-5, "{p:?}")
                }
                EquilibriumKind::Unstable => assert!(m < 1e-5 || m > PI - 1e-5, "{p:?}"),
                _ => {}
            }
        }
    }

    #[test]
    fn circle_census_is_degenerate() {
        let body = RadialBody2::new(SpaceKind::euclidean(2), Arc::new(|_| 1.0));
        let census = count_equilibria_2d(&body, 256, 1e-6).unwrap();
        assert!(census.degenerate_count > 0);
    }

    #[test]
    fn ball_curvature_everywhere() {
        for r in [0.5, 1.0, 2.0] {
            let body = RadialBody::new(SpaceKind::euclidean(3), Arc::new(move |_, _| r));
            for (t, p) in [(0.0, 0.0), (0.7, 2.0), (FRAC_PI_2, 0.0), (-1.5, 1.0)] {
                let k = gaussian_curvature(&body, t, p).unwrap();
                assert!((k - 1.0 / (r * r)).abs() < 1e-6, "r={r} ({t},{p}): {k}");
            }
            let rep = min_curvature(&body, 24).unwrap();
            assert!((rep.min - 1.0 / (r * r)).abs() < 1e-6);
        }
    }

    #[test]
    fn ellipsoid_curvature_at_axis_points() {
        // K = (abc)^2 / (a^2 b^2 c^2 * ...) reduces at an axis endpoint of
        // semi-axis c to c^2 / (a^2 b^2)
        let (a, b, c) = (1.0, 1.0, 0.5);
        let body = ellipsoid_body(a, b, c);
        let cases = [
            (FRAC_PI_2, 0.0, c * c / (a * a * b * b)),
            (-FRAC_PI_2, 0.0, c * c / (a * a * b * b)),
            (0.0, 0.0, a * a / (b * b * c * c)),
            (0.0, PI, a * a / (b * b * c * c)),
            (0.0, FRAC_PI_2, b * b / (a * a * c * c)),
            (0.0, -FRAC_PI_2, b * b / (a * a * c * c)),
        ];
        for (t, p, expect) in cases {
            let k = gaussian_curvature(&body, t, p).unwrap();
            assert!((k - expect).abs() < 1e-5 * expect, "({t},{p}): {k} vs {expect}");
        }
    }

    #[test]
    fn family_min_curvature_positive_at_small_d() {
        let params = GombocParams::new(0.5, 0.02, 1.0, SpaceKind::spherical(3)).unwrap();
        let body = build_body(&params).unwrap();
        let rep = min_curvature(&body, 48).unwrap();
        assert!(rep.min > 0.0, "min curvature {rep:?}");
    }

    #[test]
    fn dstar_is_usable() {
        let sph = SpaceKind::spherical(3);
        let d = find_dstar((0.3, 0.7), 1.0, &sph, 3);
        assert!(d >= 0.01, "d* = {d}");
        // halving d keeps convexity
        let params = GombocParams::new(0.5, d / 2.0, 1.0, sph).unwrap();
        let body = build_body(&params).unwrap();
        assert!(min_curvature(&body, 32).unwrap().min > 0.0);
    }

    #[test]
    fn hausdorff_basics() {
        let ball = RadialBody::new(SpaceKind::spherical(3), Arc::new(|_, _| 0.8));
        assert!(hausdorff_to_ball(&ball, 0.8).unwrap() < 1e-12);

        let params = GombocParams::new(0.5, 0.02, 1.0, SpaceKind::spherical(3)).unwrap();
        let body = build_body(&params).unwrap();
        let h = hausdorff_to_ball(&body, 1.0).unwrap();
        // radial range is [R(1-d), R(1+d)]; the arctan gap below R dominates
        let bound = 1.0_f64.atan() - 0.98_f64.atan();
        assert!(h > 0.0 && h <= bound * 1.05, "h = {h}, bound = {bound}");
        // halving d roughly halves the deviation
        let params2 = GombocParams::new(0.5, 0.01, 1.0, SpaceKind::spherical(3)).unwrap();
        let body2 = build_body(&params2).unwrap();
        let h2 = hausdorff_to_ball(&body2, 1.0).unwrap();
        assert!((h2 - 0.5 * h).abs() < 0.1 * h, "h = {h}, h2 = {h2}");
    }

    #[test]
    fn certificate_passes_spherical_at_small_d() {
        let params = GombocParams::new(0.5, 0.002, 1.0, SpaceKind::spherical(3)).unwrap();
        let cert = certify_mono_monostatic(&params, 0.05);
        assert!(cert.pass.all(), "{cert:?}");
        assert!(cert.errors.is_empty());
        let json = serde_json::to_value(&cert).unwrap();
        assert!(json["pass"]["A"].as_bool().unwrap());
        assert!(json["census"]["S"].as_u64().unwrap() == 1);
    }

    #[test]
    fn certificate_reports_nonconvexity_at_larger_d() {
        // at d = 0.02 the centering root sits near c = 0.056, where the
        // azimuthal blend transition is sharp enough that the boundary is
        // genuinely nonconvex (chord test agrees); the certificate must
        // report condition D as failed rather than error out
        let params = GombocParams::new(0.5, 0.02, 1.0, SpaceKind::spherical(3)).unwrap();
        let cert = certify_mono_monostatic(&params, 0.05);
        assert!(cert.pass.a && cert.pass.b && cert.pass.c && cert.pass.e, "{cert:?}");
        assert!(!cert.pass.d, "{cert:?}");
        assert!(cert.min_curvature < 0.0);
        assert!(cert.errors.is_empty());
    }
}
