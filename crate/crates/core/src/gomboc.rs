//! The two-parameter family of mono-monostatic candidate bodies.
//!
//! The family is assembled from a monotone ramp on `[0,1]`, a pair of
//! meridian warps of the polar angle, an azimuthal blending weight, and the
//! resulting height profile `rho(c, theta, phi)` in `[-1, 1]`. The body is
//! the chart star body with radial function `R (1 + d rho)` (constant
//! curvature) or `R rho_M(theta) (1 + d rho)` (rotationally symmetric normed
//! space). All first and second partial derivatives are assembled by hand via
//! the chain rule so that equilibrium polishing and curvature certification
//! do not depend on finite differences.

use crate::error::GeomError;
use crate::spaces::{Geometry, SpaceKind};
use std::f64::consts::{FRAC_PI_2, PI};
use std::sync::Arc;

/// Angular distance from a pole below which the blending weight switches to
/// its limit value.
const POLE_EPS: f64 = 1e-9;

/// The monotone ramp on `[0,1]`: a smooth rational function, strictly
/// increasing, with fixed endpoints 0 and 1, unit one-sided derivatives at
/// both ends, the identity at `c = 1`, and pointwise limit 0 on `[0,1)` as
/// `c -> 0+`.
pub fn ramp(c: f64, x: f64) -> Result<f64, GeomError> {
    if !(c > 0.0 && c <= 1.0) {
        return Err(GeomError::InvalidParams(format!("ramp: c = {c} outside (0, 1]")));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(GeomError::InvalidParams(format!("ramp: x = {x} outside [0, 1]")));
    }
    Ok(ramp_jet(c, x).0)
}

/// Value, first and second derivative of the ramp. The value is evaluated in
/// a factored rearrangement that keeps full precision near both endpoints.
pub(crate) fn ramp_jet(c: f64, x: f64) -> (f64, f64, f64) {
    if x == 0.0 {
        return (0.0, 1.0, ramp_d2_limit(c, 0.0));
    }
    if x == 1.0 {
        return (1.0, 1.0, ramp_d2_limit(c, 1.0));
    }
    if c == 1.0 {
        return (x, 1.0, 0.0);
    }
    let e = 1.0 - c;
    let p = c + x;
    let q = (1.0 - x) * (1.0 - x);
    let qp = -2.0 * (1.0 - x);
    // value: c x (x p + e q) / (p (c x + e q)), the dominant factor pulled out
    let d = c * x + e * q;
    let val = c * x * (x * p + e * q) / (p * d);
    // u = x q / p and its derivatives
    let s = (q + x * qp) * p - x * q;
    let u1 = s / (p * p);
    let sp = 2.0 * (3.0 * x - 2.0) * p;
    let u2 = (sp * p - 2.0 * s) / (p * p * p);
    let n1 = 2.0 * c * x + e * c * u1;
    let n2 = 2.0 * c + e * c * u2;
    let d1 = c + e * qp;
    let d2 = 2.0 * e;
    let f1 = (n1 - val * d1) / d;
    let f2 = (n2 - 2.0 * f1 * d1 - val * d2) / d;
    (val, f1, f2)
}

fn ramp_d2_limit(c: f64, x: f64) -> f64 {
    if c == 1.0 {
        return 0.0;
    }
    // one-sided second derivative via the interior formula a hair inside
    let h = 1e-9;
    let xx = if x == 0.0 { h } else { 1.0 - h };
    ramp_jet(c, xx).2
}

/// The meridian warp `theta -> pi * ramp(theta/pi + 1/2) - pi/2`, a bijection
/// of `[-pi/2, pi/2]` onto itself.
pub fn meridian_warp(c: f64, theta: f64) -> f64 {
    warp_jet(c, theta).0
}

/// The mirrored warp `-warp(-theta)`.
pub fn meridian_warp_mirror(c: f64, theta: f64) -> f64 {
    -warp_jet(c, -theta).0
}

/// (f, f', f'') of the warp with respect to `theta`.
fn warp_jet(c: f64, theta: f64) -> (f64, f64, f64) {
    let x = (theta / PI + 0.5).clamp(0.0, 1.0);
    let (v, d1, d2) = ramp_jet(c, x);
    (PI * v - FRAC_PI_2, d1, d2 / PI)
}

/// Azimuthal blending weight in `[0, 1]`. At the poles the defining fraction
/// is 0/0; any value yields the same height profile there, and the symmetric
/// choice 1/2 is used.
pub fn blend_weight(c: f64, theta: f64, phi: f64) -> f64 {
    if FRAC_PI_2 - theta.abs() < POLE_EPS {
        return 0.5;
    }
    let f = warp_jet(c, theta).0;
    let g = -warp_jet(c, -theta).0;
    let (sp, cp) = phi.sin_cos();
    let af = cp * cp * f.cos() * f.cos();
    let ag = sp * sp * g.cos() * g.cos();
    let s = af + ag;
    if s == 0.0 {
        0.5
    } else {
        af / s
    }
}

/// The height profile `rho(c, theta, phi)`: the blend of the sines of the two
/// warps, with values in `[-1, 1]` and value `+-1` at the poles.
pub fn height_profile(c: f64, theta: f64, phi: f64) -> f64 {
    if FRAC_PI_2 - theta.abs() < POLE_EPS {
        return theta.signum();
    }
    let f = warp_jet(c, theta).0;
    let g = -warp_jet(c, -theta).0;
    let a = blend_weight(c, theta, phi);
    a * f.sin() + (1.0 - a) * g.sin()
}

/// The pointwise limit of the height profile as `c -> 0+`.
pub fn height_profile_limit(theta: f64, phi: f64) -> f64 {
    let (sp, cp) = phi.sin_cos();
    let a = (FRAC_PI_2 - theta).powi(4) * sp * sp;
    let b = (FRAC_PI_2 + theta).powi(4) * cp * cp;
    if a + b == 0.0 {
        // only at theta = +-pi/2 with the matching azimuth; take the pole sign
        return theta.signum();
    }
    (a - b) / (a + b)
}

/// First and second partial derivatives of a scalar field on the parameter
/// sphere, together with its value.
#[derive(Clone, Copy, Debug, Default)]
pub struct SurfJet {
    pub v: f64,
    pub dt: f64,
    pub dp: f64,
    pub dtt: f64,
    pub dtp: f64,
    pub dpp: f64,
}

/// Full jet of the height profile at an interior point (`|theta| < pi/2`).
pub fn height_profile_jet(c: f64, theta: f64, phi: f64) -> SurfJet {
    debug_assert!(FRAC_PI_2 - theta.abs() > POLE_EPS, "jet undefined at the poles");
    let (f, f1, f2) = warp_jet(c, theta);
    let (gm, gm1, gm2) = warp_jet(c, -theta);
    let (g, g1, g2) = (-gm, gm1, -gm2);
    let (sp, cp) = phi.sin_cos();
    let (sf, cf) = f.sin_cos();
    let (sg, cg) = g.sin_cos();
    let s2p = 2.0 * sp * cp;
    let c2p = cp * cp - sp * sp;
    let s2f = 2.0 * sf * cf;
    let c2f = cf * cf - sf * sf;
    let s2g = 2.0 * sg * cg;
    let c2g = cg * cg - sg * sg;

    // A = cos^2(phi) cos^2(f), B = sin^2(phi) cos^2(g) and their partials
    let a_ = cp * cp * cf * cf;
    let b_ = sp * sp * cg * cg;
    let a_t = -cp * cp * s2f * f1;
    let b_t = -sp * sp * s2g * g1;
    let a_p = -s2p * cf * cf;
    let b_p = s2p * cg * cg;
    let a_tt = cp * cp * (-2.0 * c2f * f1 * f1 - s2f * f2);
    let b_tt = sp * sp * (-2.0 * c2g * g1 * g1 - s2g * g2);
    let a_pp = -2.0 * c2p * cf * cf;
    let b_pp = 2.0 * c2p * cg * cg;
    let a_tp = s2p * s2f * f1;
    let b_tp = -s2p * s2g * g1;

    // a = A / (A + B)
    let s = a_ + b_;
    let s_t = a_t + b_t;
    let s_p = a_p + b_p;
    let s_tt = a_tt + b_tt;
    let s_pp = a_pp + b_pp;
    let s_tp = a_tp + b_tp;
    let inv = 1.0 / s;
    let a = a_ * inv;
    let a_t_ = (a_t - a * s_t) * inv;
    let a_p_ = (a_p - a * s_p) * inv;
    let a_tt_ = (a_tt - 2.0 * a_t_ * s_t - a * s_tt) * inv;
    let a_pp_ = (a_pp - 2.0 * a_p_ * s_p - a * s_pp) * inv;
    let a_tp_ = (a_tp - a_t_ * s_p - a_p_ * s_t - a * s_tp) * inv;

    // rho = a sin f + (1 - a) sin g
    let dsin = sf - sg;
    let v = a * sf + (1.0 - a) * sg;
    let dt = a_t_ * dsin + a * cf * f1 + (1.0 - a) * cg * g1;
    let dp = a_p_ * dsin;
    let dtt = a_tt_ * dsin
        + 2.0 * a_t_ * (cf * f1 - cg * g1)
        + a * (-sf * f1 * f1 + cf * f2)
        + (1.0 - a) * (-sg * g1 * g1 + cg * g2);
    let dpp = a_pp_ * dsin;
    let dtp = a_tp_ * dsin + a_p_ * (cf * f1 - cg * g1);
    SurfJet { v, dt, dp, dtt, dtp, dpp }
}

/// Parameters of the family: shape parameter `c`, amplitude `d`, chart-ball
/// radius `R`, and the 3D space the body lives in.
#[derive(Clone, Debug)]
pub struct GombocParams {
    pub c: f64,
    pub d: f64,
    pub r: f64,
    pub space: SpaceKind,
}

impl GombocParams {
    pub fn new(c: f64, d: f64, r: f64, space: SpaceKind) -> Result<Self, GeomError> {
        if space.dim != 3 {
            return Err(GeomError::InvalidParams("family requires dim = 3".into()));
        }
        if !(c > 0.0 && c <= 1.0) {
            return Err(GeomError::InvalidParams(format!("c = {c} outside (0, 1]")));
        }
        if !(0.0..1.0).contains(&d) {
            return Err(GeomError::InvalidParams(format!("d = {d} outside [0, 1)")));
        }
        if r <= 0.0 {
            return Err(GeomError::InvalidParams(format!("R = {r} must be positive")));
        }
        if space.geometry == Geometry::Hyperbolic && r * (1.0 + d) >= 1.0 {
            return Err(GeomError::InvalidParams(format!(
                "hyperbolic body leaves the ball model: R(1+d) = {} >= 1",
                r * (1.0 + d)
            )));
        }
        Ok(GombocParams { c, d, r, space })
    }
}

/// Chart radial value of the family member at direction `(theta, phi)`.
pub fn radial_r(params: &GombocParams, theta: f64, phi: f64) -> f64 {
    let rho = height_profile(params.c, theta, phi);
    let base = params.r * (1.0 + params.d * rho);
    match params.space.geometry {
        Geometry::Normed => {
            let prof = params.space.profile.as_deref().expect("normed profile");
            base * prof.value(theta)
        }
        _ => base,
    }
}

/// A star-shaped 3D body given by a radial function over direction space
/// around the chart reference point, with optional analytic partials.
#[derive(Clone)]
pub struct RadialBody {
    pub space: SpaceKind,
    radial: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
    partials: Option<Arc<dyn Fn(f64, f64) -> SurfJet + Send + Sync>>,
}

impl RadialBody {
    pub fn new(space: SpaceKind, radial: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>) -> Self {
        assert_eq!(space.dim, 3);
        RadialBody { space, radial, partials: None }
    }

    pub fn with_partials(
        space: SpaceKind,
        radial: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
        partials: Arc<dyn Fn(f64, f64) -> SurfJet + Send + Sync>,
    ) -> Self {
        assert_eq!(space.dim, 3);
        RadialBody { space, radial, partials: Some(partials) }
    }

    pub fn radial(&self, theta: f64, phi: f64) -> f64 {
        (self.radial)(theta, phi)
    }

    pub fn has_analytic_partials(&self) -> bool {
        self.partials.is_some()
    }

    /// Analytic jet when available, central finite differences otherwise
    /// (step 1e-5; interior points only).
    pub fn jet(&self, theta: f64, phi: f64) -> SurfJet {
        if let Some(p) = &self.partials {
            return p(theta, phi);
        }
        let h = 1e-5;
        let r = |t: f64, p: f64| (self.radial)(t, p);
        let v = r(theta, phi);
        let (tp, tm) = (r(theta + h, phi), r(theta - h, phi));
        let (pp, pm) = (r(theta, phi + h), r(theta, phi - h));
        SurfJet {
            v,
            dt: (tp - tm) / (2.0 * h),
            dp: (pp - pm) / (2.0 * h),
            dtt: (tp - 2.0 * v + tm) / (h * h),
            dpp: (pp - 2.0 * v + pm) / (h * h),
            dtp: (r(theta + h, phi + h) - r(theta + h, phi - h) - r(theta - h, phi + h)
                + r(theta - h, phi - h))
                / (4.0 * h * h),
        }
    }

    /// Maximum radial value over a coarse scan grid, used for domain checks.
    pub fn max_radial(&self, n: usize) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..=n {
            let t = -FRAC_PI_2 + PI * i as f64 / n as f64;
            for j in 0..2 * n {
                let p = 2.0 * PI * j as f64 / (2 * n) as f64;
                m = m.max(self.radial(t, p));
            }
        }
        m
    }
}

impl std::fmt::Debug for RadialBody {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RadialBody")
            .field("space", &self.space)
            .field("analytic_partials", &self.partials.is_some())
            .finish()
    }
}

/// A star-shaped plane body given by a radial function of the direction
/// angle around the chart origin.
#[derive(Clone)]
pub struct RadialBody2 {
    pub space: SpaceKind,
    radial: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl RadialBody2 {
    pub fn new(space: SpaceKind, radial: Arc<dyn Fn(f64) -> f64 + Send + Sync>) -> Self {
        assert_eq!(space.dim, 2);
        RadialBody2 { space, radial }
    }

    pub fn radial(&self, phi: f64) -> f64 {
        (self.radial)(phi)
    }
}

impl std::fmt::Debug for RadialBody2 {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RadialBody2").field("space", &self.space).finish()
    }
}

/// Builds the family member as a radial body with analytic partials.
pub fn build_body(params: &GombocParams) -> Result<RadialBody, GeomError> {
    let params = GombocParams::new(params.c, params.d, params.r, params.space.clone())?;
    let p1 = params.clone();
    let radial = Arc::new(move |t: f64, p: f64| radial_r(&p1, t, p));
    let p2 = params.clone();
    let partials = Arc::new(move |t: f64, p: f64| family_jet(&p2, t, p));
    Ok(RadialBody::with_partials(params.space.clone(), radial, partials))
}

/// Analytic jet of the family's radial function.
fn family_jet(params: &GombocParams, theta: f64, phi: f64) -> SurfJet {
    let rho = height_profile_jet(params.c, theta, phi);
    let (r, d) = (params.r, params.d);
    match params.space.geometry {
        Geometry::Normed => {
            let prof = params.space.profile.as_deref().expect("normed profile");
            let m = prof.value(theta);
            let m1 = prof.d1(theta);
            let m2 = prof.d2(theta);
            let base = 1.0 + d * rho.v;
            SurfJet {
                v: r * m * base,
                dt: r * (m1 * base + m * d * rho.dt),
                dp: r * m * d * rho.dp,
                dtt: r * (m2 * base + 2.0 * m1 * d * rho.dt + m * d * rho.dtt),
                dtp: r * (m1 * d * rho.dp + m * d * rho.dtp),
                dpp: r * m * d * rho.dpp,
            }
        }
        _ => SurfJet {
            v: r * (1.0 + d * rho.v),
            dt: r * d * rho.dt,
            dp: r * d * rho.dp,
            dtt: r * d * rho.dtt,
            dtp: r * d * rho.dtp,
            dpp: r * d * rho.dpp,
        },
    }
}
