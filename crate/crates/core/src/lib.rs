//! Centroids and equilibrium points of convex bodies in spherical, hyperbolic,
//! Euclidean and normed spaces, together with a constructive two-parameter
//! family of certified mono-monostatic ("Gömböc-like") bodies.
//!
//! The curved geometries are handled through chart models in which geodesics
//! are straight lines: the gnomonic projection of the open hemisphere for the
//! sphere, and the projective (Klein) ball for hyperbolic space. Normed spaces
//! use the ambient Euclidean chart with a gauge distance.
//!
//! Module overview:
//! * [`spaces`] — chart models: distances, volume/moment weights, embeddings,
//!   centering isometries.
//! * [`gomboc`] — the two-parameter radial family `K(c,d)` and its analytic
//!   partial derivatives.
//! * [`integrate`] — quadrature over radial bodies: first moments, centroids,
//!   the centering root-finder.
//! * [`equilibria`] — equilibrium detection/classification, curvature
//!   certification, Hausdorff distance, the mono-monostatic certificate.
//! * [`bodies`] — random smooth test bodies and mesh/CSV export.

pub mod bodies;
pub mod equilibria;
pub mod error;
pub mod gomboc;
pub mod integrate;
pub mod spaces;

pub use error::GeomError;
