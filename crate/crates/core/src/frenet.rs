//! Frenet apparatus of unit-speed curves in the group, with the bracket
//! correction of a bi-invariant metric.
//!
//! Along a curve with tangent `T`, the covariant derivative of a field `W`
//! is `D_T W = Wdot + (1/2)[T, W]`. The frame satisfies
//!
//! ```text
//! D_T T =  kappa N
//! D_T N = -kappa T + (tau + tau_G) B
//! D_T B = -(tau + tau_G) N
//! ```
//!
//! where `tau_G = (1/2)<[T, N], B>` is the group torsion: `1/2` in `so(3)`,
//! `0` in the abelian algebra.

use thiserror::Error;

use crate::algebra::{cross, LieAlgebra3, Vec3g};
use crate::calculus::{CalculusError, DerivOrder, SmoothFn, SmoothVec3Fn};

/// Curvature below this is treated as a degenerate frame.
pub const KAPPA_MIN: f64 = 1e-8;

/// Allowed deviation of `|alpha'|` from 1 on the sampled unit-speed check.
pub const UNIT_SPEED_TOL: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum FrenetError {
    #[error("curve is not unit-speed: |alpha'({s})| = {speed}")]
    NotUnitSpeed { s: f64, speed: f64 },
    #[error("degenerate Frenet frame: kappa({s}) = {kappa} <= {min}", min = KAPPA_MIN)]
    CurvatureDegenerate { s: f64, kappa: f64 },
    #[error("helix parameters must satisfy a^2 + b^2 = 1 and a > 0, got a = {a}, b = {b}")]
    BadHelixParameters { a: f64, b: f64 },
    #[error("parameter grid must be strictly increasing and inside the curve domain")]
    BadGrid,
    #[error(transparent)]
    Calculus(#[from] CalculusError),
}

/// Unit-speed curve in chart coordinates over the algebra basis.
#[derive(Clone)]
pub struct Curve {
    position: SmoothVec3Fn,
    domain: (f64, f64),
}

impl Curve {
    /// Wraps a position function, checking unit speed on a sampled grid.
    pub fn new(position: SmoothVec3Fn, domain: (f64, f64)) -> Result<Self, FrenetError> {
        let curve = Curve {
            position: position.with_domain(domain.0, domain.1),
            domain,
        };
        curve.check_unit_speed(64)?;
        Ok(curve)
    }

    /// The unit circle `(cos s, sin s, 0)` with analytic derivatives.
    pub fn circle() -> Self {
        let position = SmoothVec3Fn::analytic(
            |s: f64| Vec3g::new(s.cos(), s.sin(), 0.0),
            |s: f64| Vec3g::new(-s.sin(), s.cos(), 0.0),
            |s: f64| Vec3g::new(-s.cos(), -s.sin(), 0.0),
            |s: f64| Vec3g::new(s.sin(), -s.cos(), 0.0),
        );
        let domain = (-1e6, 1e6);
        Curve {
            position: position.with_domain(domain.0, domain.1),
            domain,
        }
    }

    /// The unit-speed helix `(a cos s, a sin s, b s)`, requiring
    /// `a^2 + b^2 = 1` and `a > 0` so the curvature `a` stays regular.
    pub fn helix(a: f64, b: f64) -> Result<Self, FrenetError> {
        if a <= KAPPA_MIN || !a.is_finite() || (a * a + b * b - 1.0).abs() > 1e-9 {
            return Err(FrenetError::BadHelixParameters { a, b });
        }
        let position = SmoothVec3Fn::analytic(
            move |s: f64| Vec3g::new(a * s.cos(), a * s.sin(), b * s),
            move |s: f64| Vec3g::new(-a * s.sin(), a * s.cos(), b),
            move |s: f64| Vec3g::new(-a * s.cos(), -a * s.sin(), 0.0),
            move |s: f64| Vec3g::new(a * s.sin(), -a * s.cos(), 0.0),
        );
        let domain = (-1e6, 1e6);
        Ok(Curve {
            position: position.with_domain(domain.0, domain.1),
            domain,
        })
    }

    /// Same curve with analytic callbacks dropped in favour of central
    /// finite differences (optionally with a fixed step).
    pub fn into_finite_difference(self, step: Option<f64>) -> Self {
        Curve {
            position: self.position.into_finite_difference(step),
            domain: self.domain,
        }
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    pub fn contains(&self, s: f64) -> bool {
        s >= self.domain.0 && s <= self.domain.1
    }

    pub fn position(&self) -> &SmoothVec3Fn {
        &self.position
    }

    pub fn position_at(&self, s: f64) -> Vec3g {
        self.position.eval(s)
    }

    pub fn velocity_at(&self, s: f64) -> Result<Vec3g, FrenetError> {
        Ok(self.position.deriv(s, DerivOrder::First)?)
    }

    pub fn acceleration_at(&self, s: f64) -> Result<Vec3g, FrenetError> {
        Ok(self.position.deriv(s, DerivOrder::Second)?)
    }

    fn check_unit_speed(&self, samples: usize) -> Result<(), FrenetError> {
        let (lo, hi) = sample_window(self.domain);
        for i in 0..samples {
            let s = lo + (hi - lo) * (i as f64 + 0.5) / samples as f64;
            let speed = self.velocity_at(s)?.norm();
            if (speed - 1.0).abs() > UNIT_SPEED_TOL {
                return Err(FrenetError::NotUnitSpeed { s, speed });
            }
        }
        Ok(())
    }
}

/// Unbounded builtin domains are sampled over a few periods only.
fn sample_window(domain: (f64, f64)) -> (f64, f64) {
    let span = domain.1 - domain.0;
    if span.is_finite() && span <= 16.0 * std::f64::consts::PI {
        domain
    } else {
        let lo = domain.0.max(0.0);
        (lo, lo + 4.0 * std::f64::consts::TAU)
    }
}

/// Frame, curvature, torsion and group torsion at one parameter value.
#[derive(Debug, Clone, Copy)]
pub struct FrenetData {
    pub s: f64,
    pub tangent: Vec3g,
    pub normal: Vec3g,
    pub binormal: Vec3g,
    pub kappa: f64,
    pub tau: f64,
    pub tau_g: f64,
}

/// `D_T W = Wdot + (1/2)[T, W]` along a curve with tangent `T`.
pub fn covariant_derivative(alg: &LieAlgebra3, t: Vec3g, w: Vec3g, w_dot: Vec3g) -> Vec3g {
    w_dot + 0.5 * alg.bracket(t, w)
}

/// Group torsion `tau_G = (1/2)<[T, N], B>` of an orthonormal frame.
pub fn tau_g(alg: &LieAlgebra3, t: Vec3g, n: Vec3g, b: Vec3g) -> f64 {
    0.5 * alg.bracket(t, n).dot(b)
}

/// Step for finite differences of frame-derived scalar fields (curvature,
/// torsion, director coefficients). Wider than the raw first-derivative step
/// so residual evaluation noise in the fields is not amplified.
pub const DERIVED_FIELD_STEP: f64 = 1e-4;

/// Tangent, principal normal and curvature from the position derivatives.
fn tangent_normal(curve: &Curve, s: f64) -> Result<(Vec3g, Vec3g, f64), FrenetError> {
    let t = curve.position.deriv(s, DerivOrder::First)?;
    let t_dot = curve.position.deriv(s, DerivOrder::Second)?;
    let kappa = t_dot.norm();
    if kappa <= KAPPA_MIN {
        return Err(FrenetError::CurvatureDegenerate { s, kappa });
    }
    Ok((t, t_dot * (1.0 / kappa), kappa))
}

/// Full Frenet apparatus at `s`.
///
/// `B` is completed as `cross(T, N)`, fixing the right-handed orientation.
/// The torsion is signed via `tau = <D_T N, B> - tau_G`. `Ndot` comes from
/// the derivative identity `Ndot = Tddot/kappa - Tdot <Tdot, Tddot>/kappa^3`
/// (order-3 position derivatives), which keeps `tau(s)` smooth enough to be
/// differentiated again; the finite-difference frame route stays available
/// through [`frame_vector_dot`] and is cross-checked in the verification layer.
pub fn frenet_at(alg: &LieAlgebra3, curve: &Curve, s: f64) -> Result<FrenetData, FrenetError> {
    let (t, n, kappa) = tangent_normal(curve, s)?;
    let b = cross(t, n);
    let tau_g_val = tau_g(alg, t, n, b);
    let t_dot = curve.position.deriv(s, DerivOrder::Second)?;
    let t_ddot = curve.position.deriv(s, DerivOrder::Third)?;
    let n_dot = t_ddot * (1.0 / kappa) - t_dot * (t_dot.dot(t_ddot) / (kappa * kappa * kappa));
    let d_t_n = covariant_derivative(alg, t, n, n_dot);
    let tau = d_t_n.dot(b) - tau_g_val;
    Ok(FrenetData {
        s,
        tangent: t,
        normal: n,
        binormal: b,
        kappa,
        tau,
        tau_g: tau_g_val,
    })
}

/// Componentwise derivative of a frame vector by central differences of the
/// computed frame, independent of the order-3 route inside `frenet_at`. The
/// stencil is wide so that evaluation noise of finite-difference curves is
/// not amplified past the frame-equation tolerances.
pub fn frame_vector_dot(
    curve: &Curve,
    s: f64,
    pick: fn(Vec3g, Vec3g) -> Vec3g,
) -> Result<Vec3g, FrenetError> {
    let h = 2e-3;
    let plus = tangent_normal(curve, s + h)?;
    let minus = tangent_normal(curve, s - h)?;
    Ok((pick(plus.0, plus.1) - pick(minus.0, minus.1)) * (1.0 / (2.0 * h)))
}

/// Frames over a parameter grid plus scalar fields ready for differentiation.
pub struct FrameField {
    alg: LieAlgebra3,
    curve: Curve,
    pub samples: Vec<FrenetData>,
}

impl FrameField {
    /// Evaluates the apparatus on a strictly increasing grid.
    pub fn build(alg: &LieAlgebra3, curve: &Curve, grid: &[f64]) -> Result<Self, FrenetError> {
        if grid.is_empty()
            || grid.windows(2).any(|w| w[1] <= w[0])
            || grid.iter().any(|&s| !curve.contains(s))
        {
            return Err(FrenetError::BadGrid);
        }
        let samples = grid
            .iter()
            .map(|&s| frenet_at(alg, curve, s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FrameField {
            alg: alg.clone(),
            curve: curve.clone(),
            samples,
        })
    }

    fn scalar_fn(&self, pick: impl Fn(&FrenetData) -> f64 + Send + Sync + 'static) -> SmoothFn {
        let alg = self.alg.clone();
        let curve = self.curve.clone();
        let (lo, hi) = curve.domain();
        SmoothFn::finite_difference_with_step(
            move |s| {
                frenet_at(&alg, &curve, s)
                    .map(|d| pick(&d))
                    .unwrap_or(f64::NAN)
            },
            DERIVED_FIELD_STEP,
        )
        .with_domain(lo, hi)
    }

    /// `kappa(s)` as a differentiable scalar field.
    pub fn kappa_fn(&self) -> SmoothFn {
        self.scalar_fn(|d| d.kappa)
    }

    /// `tau(s)` as a differentiable scalar field.
    pub fn tau_fn(&self) -> SmoothFn {
        self.scalar_fn(|d| d.tau)
    }

    /// `tau_G(s)` as a differentiable scalar field.
    pub fn tau_g_fn(&self) -> SmoothFn {
        self.scalar_fn(|d| d.tau_g)
    }

    fn vector_fn(&self, pick: fn(&FrenetData) -> Vec3g) -> SmoothVec3Fn {
        let fns: Vec<SmoothFn> = (0..3)
            .map(|i| self.scalar_fn(move |d| pick(d).get(i)))
            .collect();
        SmoothVec3Fn::new(fns[0].clone(), fns[1].clone(), fns[2].clone())
    }

    /// `T(s)` componentwise, differentiable.
    pub fn tangent_fn(&self) -> SmoothVec3Fn {
        self.vector_fn(|d| d.tangent)
    }

    /// `N(s)` componentwise, differentiable.
    pub fn normal_fn(&self) -> SmoothVec3Fn {
        self.vector_fn(|d| d.normal)
    }

    /// `B(s)` componentwise, differentiable.
    pub fn binormal_fn(&self) -> SmoothVec3Fn {
        self.vector_fn(|d| d.binormal)
    }
}
