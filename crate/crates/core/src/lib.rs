//! Ruled surfaces in three-dimensional Lie groups with bi-invariant metrics.
//!
//! A ruled surface `phi(s, v) = alpha(s) + v X(s)` is built from a unit-speed
//! base curve `alpha` in a 3D Lie group and a unit director field `X`. The
//! group enters through its Lie algebra: a bi-invariant metric forces
//! `D_X Y = (1/2)[X, Y]` on left-invariant fields, so every covariant
//! derivative along the curve picks up a bracket correction
//! `D_T W = Wdot + (1/2)[T, W]`.
//!
//! The crate computes the Frenet apparatus `{T, N, B, kappa, tau}` together
//! with the group torsion `tau_G = (1/2)<[T,N], B>`, the six fundamental-form
//! coefficients, the distribution parameter, Gaussian/mean curvature, and the
//! geodesic curvature / normal curvature / geodesic torsion of the base curve
//! with respect to the surface.
//!
//! Everything is computed twice:
//! - a *definitional* pipeline evaluates the first-principles formulas
//!   (surface partials, unit normal, inner products), and
//! - a *closed-form* pipeline evaluates per-family reference formulas.
//!
//! The [`verify`] module compares the two and classifies each quantity as
//! asserting (the closed form is algebraically derivable and must agree) or
//! report-only (the closed form is internally inconsistent and only its
//! residual is recorded).
//!
//! ```
//! use ruled_core::algebra::{LieAlgebra3, Vec3g};
//! use ruled_core::frenet::Curve;
//! use ruled_core::invariants::{distribution_parameter, gauss_mean_definitional};
//! use ruled_core::surfaces::RuledSurfaceSpec;
//!
//! // The cylinder over the unit circle in so(3), rulings along (0, 0, 1).
//! let so3 = LieAlgebra3::builtin("so3").unwrap();
//! let spec = RuledSurfaceSpec::general(so3, Curve::circle(), Vec3g::new(0.0, 0.0, 1.0)).unwrap();
//!
//! let lambda = distribution_parameter(&spec, 0.0).unwrap().finite().unwrap();
//! assert!((lambda - 2.0).abs() < 1e-9); // not developable, unlike its Euclidean cousin
//!
//! let (gauss, mean) = gauss_mean_definitional(&spec, 0.0, 0.0).unwrap();
//! assert!((gauss + 0.25).abs() < 1e-6 && (mean + 0.5).abs() < 1e-6);
//! ```

pub mod algebra;
pub mod calculus;
pub mod frenet;
pub mod invariants;
pub mod report;
pub mod surfaces;
pub mod verify;

pub use algebra::{cross, det3, LieAlgebra3, Vec3g};
pub use frenet::{Curve, FrenetData};
pub use invariants::{Classification, InvariantRecord, Pipeline, PointType};
pub use surfaces::{DirectorSpec, Family, FundamentalForms, RuledSurfaceSpec};
