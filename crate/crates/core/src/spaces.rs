//! Chart models of the four supported geometries.
//!
//! Spherical space is handled through the gnomonic projection of the open
//! hemisphere around the reference point onto its tangent hyperplane, and
//! hyperbolic space through the projective (Klein) ball model. Both charts map
//! geodesics to straight lines, so convexity and geodesic hyperplanes have
//! exact Euclidean representations in the chart. Euclidean and normed spaces
//! use the ambient coordinates directly; a normed space carries a rotationally
//! symmetric unit-ball profile that defines its gauge.

use crate::error::GeomError;
use std::sync::Arc;

/// Which geometry a computation takes place in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Geometry {
    Euclidean,
    Spherical,
    Hyperbolic,
    Normed,
}

impl Geometry {
    pub fn name(self) -> &'static str {
        match self {
            Geometry::Euclidean => "euclidean",
            Geometry::Spherical => "spherical",
            Geometry::Hyperbolic => "hyperbolic",
            Geometry::Normed => "normed",
        }
    }
}

/// A geometry together with its dimension (2 or 3) and, for normed spaces,
/// the unit-ball profile.
#[derive(Clone, Debug)]
pub struct SpaceKind {
    pub geometry: Geometry,
    pub dim: usize,
    pub profile: Option<Arc<NormProfile>>,
}

impl SpaceKind {
    pub fn euclidean(dim: usize) -> Self {
        assert!(dim == 2 || dim == 3, "dim must be 2 or 3");
        SpaceKind { geometry: Geometry::Euclidean, dim, profile: None }
    }

    pub fn spherical(dim: usize) -> Self {
        assert!(dim == 2 || dim == 3, "dim must be 2 or 3");
        SpaceKind { geometry: Geometry::Spherical, dim, profile: None }
    }

    pub fn hyperbolic(dim: usize) -> Self {
        assert!(dim == 2 || dim == 3, "dim must be 2 or 3");
        SpaceKind { geometry: Geometry::Hyperbolic, dim, profile: None }
    }

    pub fn normed(dim: usize, profile: Arc<NormProfile>) -> Self {
        assert!(dim == 2 || dim == 3, "dim must be 2 or 3");
        SpaceKind { geometry: Geometry::Normed, dim, profile: Some(profile) }
    }

    fn norm_profile(&self) -> &NormProfile {
        self.profile.as_deref().expect("normed space requires a profile")
    }

    /// Checks that `p` lies in the chart domain.
    pub fn check_in_chart(&self, p: &ChartPoint) -> Result<(), GeomError> {
        if self.geometry == Geometry::Hyperbolic && p.norm() >= 1.0 {
            return Err(GeomError::OutOfChart(format!(
                "|p| = {} >= 1 in the projective ball",
                p.norm()
            )));
        }
        Ok(())
    }

    /// Geometry distance from the chart origin to `p`.
    ///
    /// Spherical: `arctan |p|` (gnomonic chart). Hyperbolic: `artanh |p|`
    /// (projective ball). Euclidean: `|p|`. Normed: the gauge of `p` with
    /// respect to the unit ball.
    pub fn dist_from_origin(&self, p: &ChartPoint) -> Result<f64, GeomError> {
        self.check_in_chart(p)?;
        let r = p.norm();
        Ok(match self.geometry {
            Geometry::Euclidean => r,
            Geometry::Spherical => r.atan(),
            Geometry::Hyperbolic => r.atanh(),
            Geometry::Normed => self.gauge(p),
        })
    }

    /// Gauge of `p` with respect to the normed unit ball
    /// (`inf { lambda > 0 : p in lambda M }`). Exact for the supported
    /// rotationally symmetric profiles: `|p| / rho_M(theta(p))`.
    pub fn gauge(&self, p: &ChartPoint) -> f64 {
        let r = p.norm();
        if r == 0.0 {
            return 0.0;
        }
        let prof = self.norm_profile();
        let ang = p.profile_angle();
        r / prof.value(ang)
    }

    /// Chart density of the geometry volume with respect to Lebesgue measure.
    ///
    /// In 3D: `(1 + |p|^2)^{-2}` (spherical), `(1 - |p|^2)^{-2}` (hyperbolic),
    /// `1` (flat). In 2D the exponent is `-3/2`, the `(d+1)/2` chart Jacobian.
    pub fn volume_weight(&self, p: &ChartPoint) -> Result<f64, GeomError> {
        self.check_in_chart(p)?;
        let r2 = p.norm_sq();
        let expo = (self.dim as f64 + 1.0) / 2.0;
        Ok(match self.geometry {
            Geometry::Euclidean | Geometry::Normed => 1.0,
            Geometry::Spherical => (1.0 + r2).powf(-expo),
            Geometry::Hyperbolic => (1.0 - r2).powf(-expo),
        })
    }

    /// Same as [`volume_weight`](Self::volume_weight), given `|p|^2` directly.
    pub fn volume_weight_r2(&self, r2: f64) -> f64 {
        let expo = (self.dim as f64 + 1.0) / 2.0;
        match self.geometry {
            Geometry::Euclidean | Geometry::Normed => 1.0,
            Geometry::Spherical => (1.0 + r2).powf(-expo),
            Geometry::Hyperbolic => (1.0 - r2).powf(-expo),
        }
    }

    /// Signed density of the first moment with respect to the oriented
    /// reference hyperplane `{x3 = 0}` (3D only): the sin/sinh of the signed
    /// geodesic distance times the volume weight collapses to
    /// `x3 (1 +- |p|^2)^{-5/2}` in the curved charts, and to plain `x3` in
    /// flat ones.
    pub fn moment_weight_x3(&self, p: &ChartPoint) -> Result<f64, GeomError> {
        if self.dim != 3 {
            return Err(GeomError::InvalidParams(
                "moment_weight_x3 requires dim = 3".into(),
            ));
        }
        self.check_in_chart(p)?;
        let r2 = p.norm_sq();
        let x3 = p.coords[2];
        Ok(match self.geometry {
            Geometry::Euclidean | Geometry::Normed => x3,
            Geometry::Spherical => x3 * (1.0 + r2).powf(-2.5),
            Geometry::Hyperbolic => x3 * (1.0 - r2).powf(-2.5),
        })
    }

    /// Embeds a chart point into the model hypersurface: the unit sphere of
    /// `R^{d+1}` (spherical), the hyperboloid `<q,q>_L = -1` (hyperbolic), or
    /// the point itself (flat). The result uses the first `dim + 1`
    /// coordinates for curved spaces and the first `dim` otherwise.
    pub fn embed(&self, p: &ChartPoint) -> Result<[f64; 4], GeomError> {
        self.check_in_chart(p)?;
        let mut out = [0.0; 4];
        match self.geometry {
            Geometry::Euclidean | Geometry::Normed => {
                out[..self.dim].copy_from_slice(&p.coords[..self.dim]);
            }
            Geometry::Spherical => {
                let s = (1.0 + p.norm_sq()).sqrt();
                for i in 0..self.dim {
                    out[i] = p.coords[i] / s;
                }
                out[self.dim] = 1.0 / s;
            }
            Geometry::Hyperbolic => {
                let s = (1.0 - p.norm_sq()).sqrt();
                for i in 0..self.dim {
                    out[i] = p.coords[i] / s;
                }
                out[self.dim] = 1.0 / s;
            }
        }
        Ok(out)
    }

    /// `sin`/`sinh` of the signed geodesic distance from `h` to `p` in the
    /// curved geometries, and the plain signed (gauge) distance in flat ones.
    /// The sign follows the orientation of `h`.
    pub fn sin_signed_distance(
        &self,
        h: &OrientedGeodesicHyperplane,
        p: &ChartPoint,
    ) -> Result<f64, GeomError> {
        self.check_in_chart(p)?;
        let dot = dotn(&h.normal, &p.coords, self.dim) - h.offset;
        Ok(match self.geometry {
            Geometry::Euclidean => dot,
            Geometry::Normed => dot * h.inv_support,
            Geometry::Spherical => {
                // embedded normal (n, -b) / sqrt(1 + b^2) against (p, 1) / sqrt(1 + |p|^2)
                dot / ((1.0 + h.offset * h.offset).sqrt() * (1.0 + p.norm_sq()).sqrt())
            }
            Geometry::Hyperbolic => {
                if h.offset.abs() >= 1.0 {
                    return Err(GeomError::OutOfChart(
                        "hyperplane offset outside the projective ball".into(),
                    ));
                }
                dot / ((1.0 - h.offset * h.offset).sqrt() * (1.0 - p.norm_sq()).sqrt())
            }
        })
    }

    /// Geometry distance between two chart points.
    pub fn dist(&self, p: &ChartPoint, q: &ChartPoint) -> Result<f64, GeomError> {
        match self.geometry {
            Geometry::Euclidean => Ok(sub(p, q).norm()),
            Geometry::Normed => Ok(self.gauge(&sub(q, p))),
            Geometry::Spherical => {
                let a = self.embed(p)?;
                let b = self.embed(q)?;
                Ok(dotn(&a, &b, self.dim + 1).clamp(-1.0, 1.0).acos())
            }
            Geometry::Hyperbolic => {
                let a = self.embed(p)?;
                let b = self.embed(q)?;
                Ok((-lorentz_dot(&a, &b, self.dim)).max(1.0).acosh())
            }
        }
    }

    /// An isometry of the space, in chart coordinates, mapping `p` to the
    /// chart origin: a translation (flat), the rotation of the sphere moving
    /// `embed(p)` to the pole (spherical), or the hyperbolic translation along
    /// the geodesic through the origin and `p` (hyperbolic), expressed as the
    /// projective map the Lorentz boost induces on the ball.
    pub fn center_isometry(&self, p: &ChartPoint) -> Result<ChartIsometry, GeomError> {
        self.check_in_chart(p)?;
        let dim = self.dim;
        match self.geometry {
            Geometry::Euclidean | Geometry::Normed => {
                let mut t = [0.0; 3];
                for i in 0..dim {
                    t[i] = -p.coords[i];
                }
                Ok(ChartIsometry { kind: IsoKind::Translation(t), dim })
            }
            Geometry::Spherical => {
                let v = self.embed(p)?;
                Ok(ChartIsometry {
                    kind: IsoKind::Projective { m: rotation_to_pole(&v, dim), lorentz: false },
                    dim,
                })
            }
            Geometry::Hyperbolic => {
                let r = p.norm();
                if r == 0.0 {
                    return Ok(ChartIsometry {
                        kind: IsoKind::Projective { m: identity4(), lorentz: true },
                        dim,
                    });
                }
                let mut u = [0.0; 3];
                for i in 0..dim {
                    u[i] = p.coords[i] / r;
                }
                Ok(ChartIsometry {
                    kind: IsoKind::Projective { m: lorentz_boost(&u, -r.atanh(), dim), lorentz: true },
                    dim,
                })
            }
        }
    }
}

/// A point in chart coordinates. For spherical spaces these are gnomonic
/// coordinates in the tangent hyperplane; for hyperbolic, projective-ball
/// coordinates with `|coords| < 1`; for flat spaces, ambient coordinates.
/// Only the first `dim` entries of `coords` are meaningful.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChartPoint {
    pub coords: [f64; 3],
    pub dim: usize,
}

impl ChartPoint {
    pub fn new2(x: f64, y: f64) -> Self {
        ChartPoint { coords: [x, y, 0.0], dim: 2 }
    }

    pub fn new3(x: f64, y: f64, z: f64) -> Self {
        ChartPoint { coords: [x, y, z], dim: 3 }
    }

    pub fn origin(dim: usize) -> Self {
        ChartPoint { coords: [0.0; 3], dim }
    }

    /// Chart point at chart radius `r` in the direction with polar angle
    /// `theta` and azimuth `phi` (3D).
    pub fn spherical_dir(r: f64, theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        ChartPoint { coords: [r * ct * cp, r * ct * sp, r * st], dim: 3 }
    }

    pub fn norm_sq(&self) -> f64 {
        dotn(&self.coords, &self.coords, self.dim)
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Angle argument for the norm profile: the polar angle in 3D, the polar
    /// direction angle in 2D.
    pub fn profile_angle(&self) -> f64 {
        if self.dim == 3 {
            let rxy = (self.coords[0] * self.coords[0] + self.coords[1] * self.coords[1]).sqrt();
            self.coords[2].atan2(rxy)
        } else {
            self.coords[1].atan2(self.coords[0])
        }
    }
}

fn sub(p: &ChartPoint, q: &ChartPoint) -> ChartPoint {
    let mut c = [0.0; 3];
    for i in 0..p.dim {
        c[i] = p.coords[i] - q.coords[i];
    }
    ChartPoint { coords: c, dim: p.dim }
}

pub(crate) fn dotn(a: &[f64], b: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        s += a[i] * b[i];
    }
    s
}

/// Lorentz inner product on `R^{dim+1}`: Euclidean on the first `dim`
/// coordinates, minus the product of the last ones.
pub(crate) fn lorentz_dot(a: &[f64; 4], b: &[f64; 4], dim: usize) -> f64 {
    dotn(a, b, dim) - a[dim] * b[dim]
}

/// An oriented geodesic hyperplane in chart representation: `{x . n = b}`
/// intersected with the chart domain, oriented by the unit normal `n`. Both
/// charts map geodesic hyperplanes to Euclidean hyperplanes exactly.
#[derive(Clone, Debug)]
pub struct OrientedGeodesicHyperplane {
    pub normal: [f64; 3],
    pub offset: f64,
    inv_support: f64,
}

impl OrientedGeodesicHyperplane {
    /// Hyperplane `{x . normal = offset}`; `normal` is normalized to unit
    /// Euclidean length. For a normed space the reciprocal support value of
    /// the unit ball in direction `normal` is precomputed here, so the signed
    /// gauge distance is a single multiply per query point.
    pub fn new(space: &SpaceKind, normal: [f64; 3], offset: f64) -> Self {
        let n = dotn(&normal, &normal, space.dim).sqrt();
        assert!(n > 0.0, "hyperplane normal must be nonzero");
        let mut nn = [0.0; 3];
        for i in 0..space.dim {
            nn[i] = normal[i] / n;
        }
        let inv_support = if space.geometry == Geometry::Normed {
            let prof = space.norm_profile();
            let beta = ChartPoint { coords: nn, dim: space.dim }.profile_angle();
            1.0 / prof.support(beta)
        } else {
            1.0
        };
        OrientedGeodesicHyperplane { normal: nn, offset: offset / n, inv_support }
    }

    pub fn through_origin(space: &SpaceKind, normal: [f64; 3]) -> Self {
        Self::new(space, normal, 0.0)
    }
}

/// An isometry of the space expressed in chart coordinates. Curved-space
/// isometries act projectively: the chart point is lifted to `(x, 1)`, the
/// matrix applied, and the result divided by its last coordinate.
#[derive(Clone, Debug)]
pub struct ChartIsometry {
    kind: IsoKind,
    dim: usize,
}

#[derive(Clone, Debug)]
enum IsoKind {
    Translation([f64; 3]),
    /// Matrix on the lifted coordinates; `lorentz` records which bilinear
    /// form the matrix is orthogonal for, so the inverse is exact.
    Projective { m: [[f64; 4]; 4], lorentz: bool },
}

impl ChartIsometry {
    pub fn apply(&self, p: &ChartPoint) -> ChartPoint {
        match &self.kind {
            IsoKind::Translation(t) => {
                let mut c = [0.0; 3];
                for i in 0..self.dim {
                    c[i] = p.coords[i] + t[i];
                }
                ChartPoint { coords: c, dim: self.dim }
            }
            IsoKind::Projective { m, .. } => {
                let mut lift = [0.0; 4];
                lift[..self.dim].copy_from_slice(&p.coords[..self.dim]);
                lift[self.dim] = 1.0;
                let out = mat_vec(m, &lift);
                let w = out[self.dim];
                let mut c = [0.0; 3];
                for i in 0..self.dim {
                    c[i] = out[i] / w;
                }
                ChartPoint { coords: c, dim: self.dim }
            }
        }
    }

    pub fn inverse(&self) -> ChartIsometry {
        match &self.kind {
            IsoKind::Translation(t) => {
                let mut s = [0.0; 3];
                for i in 0..self.dim {
                    s[i] = -t[i];
                }
                ChartIsometry { kind: IsoKind::Translation(s), dim: self.dim }
            }
            IsoKind::Projective { m, lorentz } => ChartIsometry {
                // Rotations and boosts are orthogonal with respect to the
                // relevant bilinear form, so the inverse is J M^T J with J
                // the form's Gram matrix (identity in the spherical case).
                kind: IsoKind::Projective {
                    m: form_inverse(m, self.dim, *lorentz),
                    lorentz: *lorentz,
                },
                dim: self.dim,
            },
        }
    }
}

fn identity4() -> [[f64; 4]; 4] {
    let mut m = [[0.0; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    m
}

fn mat_vec(m: &[[f64; 4]; 4], v: &[f64; 4]) -> [f64; 4] {
    let mut out = [0.0; 4];
    for i in 0..4 {
        out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2] + m[i][3] * v[3];
    }
    out
}

/// Inverse of a form-orthogonal matrix on `R^{dim+1}`: the transpose for a
/// rotation, `J M^T J` with `J = diag(1,...,1,-1)` for a Lorentz map.
fn form_inverse(m: &[[f64; 4]; 4], dim: usize, lorentz: bool) -> [[f64; 4]; 4] {
    let n = dim + 1;
    let mut out = identity4();
    for i in 0..n {
        for j in 0..n {
            let mut v = m[j][i];
            // J M^T J flips sign when exactly one index is the last one
            if lorentz && (i == n - 1) != (j == n - 1) {
                v = -v;
            }
            out[i][j] = v;
        }
    }
    out
}

/// Rotation of `R^{dim+1}` taking the unit vector `v` to the pole
/// `e_{dim+1}`, acting in the plane spanned by the two.
fn rotation_to_pole(v: &[f64; 4], dim: usize) -> [[f64; 4]; 4] {
    let n = dim + 1;
    let mut a = [0.0; 4];
    a[n - 1] = 1.0;
    let ca = v[n - 1]; // cos of the angle between v and the pole
    let mut b = [0.0; 4];
    let mut bn = 0.0;
    for i in 0..n {
        b[i] = v[i] - ca * a[i];
        bn += b[i] * b[i];
    }
    bn = bn.sqrt();
    if bn < 1e-300 {
        return identity4();
    }
    for x in b.iter_mut().take(n) {
        *x /= bn;
    }
    let sa = bn; // sin of the angle, since |v| = 1
    let mut m = identity4();
    for i in 0..n {
        for j in 0..n {
            m[i][j] += (ca - 1.0) * (a[i] * a[j] + b[i] * b[j]) + sa * (a[i] * b[j] - b[i] * a[j]);
        }
    }
    m
}

/// Lorentz boost with rapidity `xi` along the spatial unit direction `u`,
/// acting on `R^{dim+1}` with the Lorentz form.
fn lorentz_boost(u: &[f64; 3], xi: f64, dim: usize) -> [[f64; 4]; 4] {
    let n = dim + 1;
    let (sh, ch) = (xi.sinh(), xi.cosh());
    let mut m = identity4();
    for i in 0..dim {
        for j in 0..dim {
            m[i][j] += (ch - 1.0) * u[i] * u[j];
        }
        m[i][n - 1] = sh * u[i];
        m[n - 1][i] = sh * u[i];
    }
    m[n - 1][n - 1] = ch;
    m
}

/// Radial profile of a rotationally symmetric normed unit ball: a smooth,
/// even, strictly positive function of the polar angle. In 2D the same
/// profile is read as a pi-periodic radial function of the direction angle.
#[derive(Debug)]
pub struct NormProfile {
    kind: ProfileKind,
}

#[derive(Debug)]
enum ProfileKind {
    /// The Euclidean unit ball.
    Ball,
    /// Superellipsoid of revolution `((x1^2+x2^2)^{p/2} + |x3|^p = 1)`.
    Superellipsoid { p: f64 },
    /// Cubic-spline interpolation of `(theta, rho)` samples.
    Samples(CubicSpline),
}

impl NormProfile {
    pub fn ball() -> Arc<Self> {
        Arc::new(NormProfile { kind: ProfileKind::Ball })
    }

    /// Superellipsoid-of-revolution profile with exponent `p >= 2`; `p = 4`
    /// is the smooth, strictly convex test norm used throughout.
    pub fn superellipsoid(p: f64) -> Arc<Self> {
        assert!(p >= 2.0, "superellipsoid exponent must be >= 2");
        Arc::new(NormProfile { kind: ProfileKind::Superellipsoid { p } })
    }

    /// Loads `(theta, rho)` samples from CSV (two columns, optional header)
    /// and interpolates with a natural cubic spline. The samples must cover
    /// `[-pi/2, pi/2]`, be strictly positive, and describe an even function.
    pub fn from_csv(path: &str) -> Result<Arc<Self>, GeomError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| GeomError::Io(format!("{path}: {e}")))?;
        let mut pts: Vec<(f64, f64)> = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut it = line.split(',');
            let a = it.next().unwrap_or("").trim();
            let b = it.next().unwrap_or("").trim();
            match (a.parse::<f64>(), b.parse::<f64>()) {
                (Ok(t), Ok(r)) => pts.push((t, r)),
                _ if ln == 0 => continue, // header
                _ => {
                    return Err(GeomError::Io(format!(
                        "{path}:{}: expected 'theta,rho'",
                        ln + 1
                    )))
                }
            }
        }
        if pts.len() < 4 {
            return Err(GeomError::InvalidParams(
                "profile CSV needs at least 4 samples".into(),
            ));
        }
        pts.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        if pts.iter().any(|&(_, r)| r <= 0.0) {
            return Err(GeomError::InvalidParams("profile values must be positive".into()));
        }
        let half = std::f64::consts::FRAC_PI_2;
        if pts.first().unwrap().0 > -half + 1e-9 || pts.last().unwrap().0 < half - 1e-9 {
            return Err(GeomError::InvalidParams(
                "profile samples must cover [-pi/2, pi/2]".into(),
            ));
        }
        let spline = CubicSpline::new(&pts);
        let prof = NormProfile { kind: ProfileKind::Samples(spline) };
        // o-symmetry of the rotationally symmetric ball reduces to even-ness
        for k in 0..64 {
            let t = half * (k as f64 + 0.5) / 64.0;
            if (prof.value(t) - prof.value(-t)).abs() > 1e-6 * prof.value(t).abs() {
                return Err(GeomError::InvalidParams(format!(
                    "profile is not even at theta = {t}"
                )));
            }
        }
        Ok(Arc::new(prof))
    }

    /// Reduces an arbitrary angle to `[-pi/2, pi/2]` using the profile's
    /// pi-periodic even extension.
    fn reduce(theta: f64) -> f64 {
        let t = theta - std::f64::consts::PI * (theta / std::f64::consts::PI).round();
        t.clamp(-std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2)
    }

    pub fn value(&self, theta: f64) -> f64 {
        let t = Self::reduce(theta);
        match &self.kind {
            ProfileKind::Ball => 1.0,
            ProfileKind::Superellipsoid { p } => se_value(*p, t),
            ProfileKind::Samples(s) => s.eval(t).0,
        }
    }

    /// First derivative with respect to the polar angle.
    pub fn d1(&self, theta: f64) -> f64 {
        let t = Self::reduce(theta);
        match &self.kind {
            ProfileKind::Ball => 0.0,
            ProfileKind::Superellipsoid { p } => se_d1(*p, t),
            ProfileKind::Samples(s) => s.eval(t).1,
        }
    }

    /// Second derivative with respect to the polar angle.
    pub fn d2(&self, theta: f64) -> f64 {
        let t = Self::reduce(theta);
        match &self.kind {
            ProfileKind::Ball => 0.0,
            ProfileKind::Superellipsoid { p } => se_d2(*p, t),
            ProfileKind::Samples(s) => s.eval(t).2,
        }
    }

    /// Support value of the unit ball in the direction with polar angle
    /// `beta`: `max_theta rho(theta) cos(theta - beta)`, by dense scan plus
    /// golden-section refinement.
    pub fn support(&self, beta: f64) -> f64 {
        if matches!(self.kind, ProfileKind::Ball) {
            return 1.0;
        }
        let f = |t: f64| self.value(t) * (t - beta).cos();
        let n = 256;
        let (mut lo, mut hi) = (beta - std::f64::consts::FRAC_PI_2, beta + std::f64::consts::FRAC_PI_2);
        let mut best_i = 0_usize;
        let mut best = f64::NEG_INFINITY;
        for i in 0..=n {
            let t = lo + (hi - lo) * i as f64 / n as f64;
            let v = f(t);
            if v > best {
                best = v;
                best_i = i;
            }
        }
        let h = (hi - lo) / n as f64;
        lo += h * (best_i.saturating_sub(1)) as f64;
        hi = lo + 2.0 * h;
        // golden-section on the bracketing cell pair
        let g = 0.618_033_988_749_894_9;
        let (mut a, mut b) = (lo, hi);
        let (mut c, mut d) = (b - g * (b - a), a + g * (b - a));
        let (mut fc, mut fd) = (f(c), f(d));
        for _ in 0..60 {
            if fc > fd {
                b = d;
                d = c;
                fd = fc;
                c = b - g * (b - a);
                fc = f(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + g * (b - a);
                fd = f(d);
            }
        }
        fc.max(fd).max(best)
    }
}

fn se_value(p: f64, t: f64) -> f64 {
    se_s(p, t).powf(-1.0 / p)
}

fn se_s(p: f64, t: f64) -> f64 {
    let (s, c) = t.sin_cos();
    (c * c).powf(p / 2.0) + (s * s).powf(p / 2.0)
}

fn se_d1(p: f64, t: f64) -> f64 {
    let sv = se_s(p, t);
    -(1.0 / p) * sv.powf(-1.0 / p - 1.0) * se_sprime(p, t)
}

fn se_sprime(p: f64, t: f64) -> f64 {
    let (s, c) = t.sin_cos();
    let a = p / 2.0 - 1.0;
    p * c * s * ((s * s).powf(a) - (c * c).powf(a))
}

fn se_d2(p: f64, t: f64) -> f64 {
    let sv = se_s(p, t);
    let sp = se_sprime(p, t);
    let (s, c) = t.sin_cos();
    let a = p / 2.0 - 1.0;
    let ts = (s * s).powf(a);
    let tc = (c * c).powf(a);
    // d/dt of p*c*s*(ts - tc); the inner powers are safe for p >= 4 and the
    // vanishing c*s factor covers p >= 2 at the axes
    let dts_m_dtc = if a >= 1.0 || (c * s).abs() > 0.0 {
        2.0 * a * c * s * ((s * s).powf(a - 1.0) + (c * c).powf(a - 1.0))
    } else {
        0.0
    };
    let spp = p * ((c * c - s * s) * (ts - tc) + c * s * dts_m_dtc);
    -(1.0 / p) * ((-1.0 / p - 1.0) * sv.powf(-1.0 / p - 2.0) * sp * sp + sv.powf(-1.0 / p - 1.0) * spp)
}

/// Natural cubic spline through strictly increasing samples, with first and
/// second derivative evaluation.
#[derive(Debug)]
struct CubicSpline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    y2: Vec<f64>,
}

impl CubicSpline {
    fn new(pts: &[(f64, f64)]) -> Self {
        let n = pts.len();
        let xs: Vec<f64> = pts.iter().map(|p| p.0).collect();
        let ys: Vec<f64> = pts.iter().map(|p| p.1).collect();
        let mut y2 = vec![0.0; n];
        let mut u = vec![0.0; n];
        for i in 1..n - 1 {
            let sig = (xs[i] - xs[i - 1]) / (xs[i + 1] - xs[i - 1]);
            let p = sig * y2[i - 1] + 2.0;
            y2[i] = (sig - 1.0) / p;
            let d = (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i])
                - (ys[i] - ys[i - 1]) / (xs[i] - xs[i - 1]);
            u[i] = (6.0 * d / (xs[i + 1] - xs[i - 1]) - sig * u[i - 1]) / p;
        }
        for i in (0..n - 1).rev() {
            y2[i] = y2[i] * y2[i + 1] + u[i];
        }
        CubicSpline { xs, ys, y2 }
    }

    /// Returns (value, first derivative, second derivative).
    fn eval(&self, x: f64) -> (f64, f64, f64) {
        let n = self.xs.len();
        let x = x.clamp(self.xs[0], self.xs[n - 1]);
        let mut lo = 0;
        let mut hi = n - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.xs[mid] > x {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let h = self.xs[hi] - self.xs[lo];
        let a = (self.xs[hi] - x) / h;
        let b = (x - self.xs[lo]) / h;
        let val = a * self.ys[lo]
            + b * self.ys[hi]
            + ((a * a * a - a) * self.y2[lo] + (b * b * b - b) * self.y2[hi]) * h * h / 6.0;
        let d1 = (self.ys[hi] - self.ys[lo]) / h
            + ((3.0 * b * b - 1.0) * self.y2[hi] - (3.0 * a * a - 1.0) * self.y2[lo]) * h / 6.0;
        let d2 = a * self.y2[lo] + b * self.y2[hi];
        (val, d1, d2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    #[test]
    fn dist_from_origin_matches_chart_formulas() {
        let sph = SpaceKind::spherical(3);
        assert_eq!(sph.dist_from_origin(&ChartPoint::origin(3)).unwrap(), 0.0);
        let p = ChartPoint::new3(1.0, 0.0, 0.0);
        assert!((sph.dist_from_origin(&p).unwrap() - FRAC_PI_4).abs() < 1e-15);

        let hyp = SpaceKind::hyperbolic(3);
        let q = ChartPoint::new3(0.5, 0.0, 0.0);
        // artanh 0.5 = ln(3)/2, evaluated independently
        let expect = 0.5 * 3.0_f64.ln();
        assert!((hyp.dist_from_origin(&q).unwrap() - expect).abs() < 1e-15);
        assert!((expect - 0.549_306_1).abs() < 1e-6);
    }

    #[test]
    fn hyperbolic_chart_domain_error() {
        let hyp = SpaceKind::hyperbolic(3);
        let p = ChartPoint::new3(1.0, 0.0, 0.0);
        assert!(matches!(
            hyp.dist_from_origin(&p),
            Err(GeomError::OutOfChart(_))
        ));
    }

    #[test]
    fn volume_weights() {
        let sph3 = SpaceKind::spherical(3);
        assert_eq!(sph3.volume_weight(&ChartPoint::origin(3)).unwrap(), 1.0);
        let p = ChartPoint::new3(0.0, 0.0, 1.0);
        assert!((sph3.volume_weight(&p).unwrap() - 0.25).abs() < 1e-15);

        let sph2 = SpaceKind::spherical(2);
        let q = ChartPoint::new2(1.0, 0.0);
        assert!((sph2.volume_weight(&q).unwrap() - 2.0_f64.powf(-1.5)).abs() < 1e-15);
    }

    #[test]
    fn moment_weight_values() {
        let sph = SpaceKind::spherical(3);
        let p = ChartPoint::new3(0.3, -0.2, 0.0);
        assert_eq!(sph.moment_weight_x3(&p).unwrap(), 0.0);
        let q = ChartPoint::new3(0.0, 0.0, 1.0);
        assert!((sph.moment_weight_x3(&q).unwrap() - 2.0_f64.powf(-2.5)).abs() < 1e-15);

        let hyp = SpaceKind::hyperbolic(3);
        let r = ChartPoint::new3(0.0, 0.0, 0.5);
        assert!((hyp.moment_weight_x3(&r).unwrap() - 0.5 * 0.75_f64.powf(-2.5)).abs() < 1e-12);

        let sph2 = SpaceKind::spherical(2);
        assert!(sph2.moment_weight_x3(&ChartPoint::origin(2)).is_err());
    }

    #[test]
    fn embed_invariants() {
        let sph = SpaceKind::spherical(3);
        let e = sph.embed(&ChartPoint::origin(3)).unwrap();
        assert_eq!(e, [0.0, 0.0, 0.0, 1.0]);

        let hyp = SpaceKind::hyperbolic(3);
        let e = hyp.embed(&ChartPoint::new3(0.6, 0.0, 0.0)).unwrap();
        assert!((e[0] - 0.75).abs() < 1e-15);
        assert!((e[3] - 1.25).abs() < 1e-15);
        assert!((lorentz_dot(&e, &e, 3) + 1.0).abs() < 1e-12);
    }

    #[test]
    fn sin_signed_distance_axis() {
        let sph = SpaceKind::spherical(3);
        let h = OrientedGeodesicHyperplane::through_origin(&sph, [0.0, 0.0, 1.0]);
        for t in [0.2, 0.7, 1.9] {
            let p = ChartPoint::new3(0.0, 0.0, t);
            let got = sph.sin_signed_distance(&h, &p).unwrap();
            assert!((got - t / (1.0 + t * t).sqrt()).abs() < 1e-15);
        }
        let hyp = SpaceKind::hyperbolic(3);
        let h = OrientedGeodesicHyperplane::through_origin(&hyp, [0.0, 0.0, 1.0]);
        for t in [0.1, 0.5, 0.9] {
            let p = ChartPoint::new3(0.0, 0.0, t);
            let got = hyp.sin_signed_distance(&h, &p).unwrap();
            assert!((got - t / (1.0 - t * t).sqrt()).abs() < 1e-14);
        }
        // zero on the plane, sign change across it
        let p = ChartPoint::new3(0.4, -0.1, 0.0);
        assert_eq!(sph.sin_signed_distance(&h, &p).unwrap(), 0.0);
        let above = sph
            .sin_signed_distance(&h, &ChartPoint::new3(0.4, -0.1, 0.01))
            .unwrap();
        let below = sph
            .sin_signed_distance(&h, &ChartPoint::new3(0.4, -0.1, -0.01))
            .unwrap();
        assert!(above > 0.0 && below < 0.0);
    }

    #[test]
    fn center_isometry_moves_p_to_origin() {
        let cases = [
            (SpaceKind::spherical(3), ChartPoint::new3(0.4, -0.3, 0.8)),
            (SpaceKind::hyperbolic(3), ChartPoint::new3(0.5, 0.0, 0.0)),
            (SpaceKind::hyperbolic(3), ChartPoint::new3(-0.2, 0.3, 0.4)),
            (SpaceKind::euclidean(3), ChartPoint::new3(2.0, -1.0, 0.5)),
        ];
        for (space, p) in cases {
            let iso = space.center_isometry(&p).unwrap();
            let o = iso.apply(&p);
            assert!(o.norm() < 1e-12, "{space:?} moved p to {o:?}");
        }
    }

    #[test]
    fn center_isometry_preserves_distances() {
        let sph = SpaceKind::spherical(3);
        let hyp = SpaceKind::hyperbolic(3);
        let pts3 = [
            ChartPoint::new3(0.1, 0.2, -0.3),
            ChartPoint::new3(-0.4, 0.1, 0.2),
            ChartPoint::new3(0.3, 0.3, 0.1),
        ];
        for space in [&sph, &hyp] {
            let c = ChartPoint::new3(0.2, -0.1, 0.3);
            let iso = space.center_isometry(&c).unwrap();
            for i in 0..3 {
                for j in (i + 1)..3 {
                    let before = space.dist(&pts3[i], &pts3[j]).unwrap();
                    let after = space
                        .dist(&iso.apply(&pts3[i]), &iso.apply(&pts3[j]))
                        .unwrap();
                    assert!(
                        (before - after).abs() < 1e-10,
                        "{space:?}: {before} vs {after}"
                    );
                }
            }
            // inverse really inverts
            let inv = iso.inverse();
            for p in &pts3 {
                let q = inv.apply(&iso.apply(p));
                for k in 0..3 {
                    assert!((q.coords[k] - p.coords[k]).abs() < 1e-12, "{p:?} -> {q:?}");
                }
            }
        }
    }

    #[test]
    fn gauge_of_superellipsoid() {
        let prof = NormProfile::superellipsoid(4.0);
        let space = SpaceKind::normed(3, prof.clone());
        // on-axis points: gauge equals Euclidean norm
        let p = ChartPoint::new3(0.0, 0.0, 0.7);
        assert!((space.gauge(&p) - 0.7).abs() < 1e-14);
        // diagonal in the (x1, x3) plane: rho = (cos^4 + sin^4)^{-1/4} at pi/4
        let t = FRAC_PI_4;
        let rho = (t.cos().powi(4) + t.sin().powi(4)).powf(-0.25);
        let q = ChartPoint::new3(0.5, 0.0, 0.5);
        assert!((space.gauge(&q) - q.norm() / rho).abs() < 1e-14);
    }

    #[test]
    fn superellipsoid_derivatives_match_finite_differences() {
        let prof = NormProfile::superellipsoid(4.0);
        let h = 1e-5;
        for k in -8..=8 {
            let t = k as f64 * FRAC_PI_2 / 8.5;
            let fd1 = (prof.value(t + h) - prof.value(t - h)) / (2.0 * h);
            let fd2 = (prof.value(t + h) - 2.0 * prof.value(t) + prof.value(t - h)) / (h * h);
            assert!((prof.d1(t) - fd1).abs() < 1e-8, "d1 at {t}");
            assert!((prof.d2(t) - fd2).abs() < 1e-5, "d2 at {t}");
        }
    }

    #[test]
    fn support_of_ball_and_superellipsoid() {
        let ball = NormProfile::ball();
        assert_eq!(ball.support(0.3), 1.0);
        let se = NormProfile::superellipsoid(4.0);
        // support of the p=4 ball in direction n: h(n) = (sum |n_i|^{4/3})^{3/4}
        // for the full superellipsoid; along an axis it is 1
        assert!((se.support(0.0) - 1.0).abs() < 1e-9);
        assert!((se.support(FRAC_PI_2) - 1.0).abs() < 1e-9);
        // diagonal direction: dual-norm value (2 * (1/sqrt2)^{4/3})^{3/4}
        let expect = (2.0 * (1.0 / 2.0_f64.sqrt()).powf(4.0 / 3.0)).powf(0.75);
        assert!((se.support(FRAC_PI_4) - expect).abs() < 1e-7);
    }

    #[test]
    fn csv_profile_roundtrip() {
        let dir = std::env::temp_dir().join("equilib_profile_test.csv");
        let mut text = String::from("theta,rho\n");
        let n = 200;
        for i in 0..=n {
            let t = -FRAC_PI_2 + PI * i as f64 / n as f64;
            text.push_str(&format!("{},{}\n", t, se_value(4.0, t)));
        }
        std::fs::write(&dir, text).unwrap();
        let prof = NormProfile::from_csv(dir.to_str().unwrap()).unwrap();
        for k in 0..20 {
            let t = -FRAC_PI_2 + PI * (k as f64 + 0.5) / 20.0;
            assert!(
                (prof.value(t) - se_value(4.0, t)).abs() < 1e-6,
                "spline vs analytic at {t}"
            );
        }
        std::fs::remove_file(&dir).ok();
    }
}
