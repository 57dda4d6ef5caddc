//! Ruled surfaces `phi(s, v) = base(s) + v X(s)` and their first-principles
//! surface data: partials, unit normal, and fundamental-form coefficients.
//!
//! Partial derivatives in `s` are covariant along the base curve:
//! `phi_s = base' + v D_T X` and `phi_ss` applies the covariant rule to the
//! computed `phi_s` field (central difference of its components plus
//! `(1/2)[T, phi_s]`). That keeps this pipeline independent of the closed
//! forms it is later compared against.

use thiserror::Error;

use crate::algebra::{cross, LieAlgebra3, Vec3g};
use crate::calculus::{CalculusError, DerivOrder, SmoothFn};
use crate::frenet::{covariant_derivative, frenet_at, Curve, FrenetData, FrenetError};

/// `|phi_s x phi_v|` at or below this is a singular point.
pub const SINGULARITY_TOL: f64 = 1e-10;

/// Unit-norm tolerance for left-invariant directors.
pub const DIRECTOR_UNIT_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum SurfaceError {
    #[error("director must be a unit vector: |X| = {norm}")]
    DirectorNotUnit { norm: f64 },
    #[error("singular point at (s, v) = ({s}, {v}): |phi_s x phi_v| = {area}")]
    SingularPoint { s: f64, v: f64, area: f64 },
    #[error("parameter s = {s} outside curve domain [{lo}, {hi}]")]
    OutsideDomain { s: f64, lo: f64, hi: f64 },
    #[error(transparent)]
    Frenet(#[from] FrenetError),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
}

/// How the director field is given.
#[derive(Clone)]
pub enum DirectorSpec {
    /// Constant coefficients in the algebra basis (left-invariant field).
    LeftInvariant(Vec3g),
    /// `X(s) = a(s) T + b(s) N + c(s) B` over the Frenet frame.
    FrenetCombo {
        a: SmoothFn,
        b: SmoothFn,
        c: SmoothFn,
    },
}

/// Ruled-surface families. The named ones fix the director (and, for the
/// developable built on the binormal indicatrix, the base curve).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    General,
    TangentDevelopable,
    Normal,
    Binormal,
    DarbouxDevelopable,
    Rectifying,
}

impl Family {
    pub fn as_str(self) -> &'static str {
        match self {
            Family::General => "general",
            Family::TangentDevelopable => "tangent-developable",
            Family::Normal => "normal",
            Family::Binormal => "binormal",
            Family::DarbouxDevelopable => "darboux-developable",
            Family::Rectifying => "rectifying",
        }
    }
}

/// First and second fundamental form coefficients at a regular point,
/// together with the unit normal and the area element `A = |phi_s x phi_v|`.
#[allow(non_snake_case)]
#[derive(Debug, Clone, Copy)]
pub struct FundamentalForms {
    pub E: f64,
    pub F: f64,
    pub G: f64,
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub normal: Vec3g,
    pub area_element: f64,
}

/// Surface partials at a point, in algebra coordinates.
#[derive(Debug, Clone, Copy)]
pub struct Partials {
    pub phi_s: Vec3g,
    pub phi_v: Vec3g,
    pub phi_ss: Vec3g,
    pub phi_sv: Vec3g,
    pub phi_vv: Vec3g,
}

/// A ruled surface: algebra, unit-speed base curve, director, family tag.
#[derive(Clone)]
pub struct RuledSurfaceSpec {
    alg: LieAlgebra3,
    curve: Curve,
    director: DirectorSpec,
    family: Family,
}

impl RuledSurfaceSpec {
    /// General surface with a unit left-invariant director.
    pub fn general(alg: LieAlgebra3, curve: Curve, x: Vec3g) -> Result<Self, SurfaceError> {
        let norm = x.norm();
        if (norm - 1.0).abs() > DIRECTOR_UNIT_TOL {
            return Err(SurfaceError::DirectorNotUnit { norm });
        }
        Ok(RuledSurfaceSpec {
            alg,
            curve,
            director: DirectorSpec::LeftInvariant(x),
            family: Family::General,
        })
    }

    /// `phi = alpha + v T`.
    pub fn tangent_developable(alg: LieAlgebra3, curve: Curve) -> Self {
        Self::frenet_family(alg, curve, Family::TangentDevelopable, (1.0, 0.0, 0.0))
    }

    /// `phi = alpha + v N`.
    pub fn normal_surface(alg: LieAlgebra3, curve: Curve) -> Self {
        Self::frenet_family(alg, curve, Family::Normal, (0.0, 1.0, 0.0))
    }

    /// `phi = alpha + v B`.
    pub fn binormal_surface(alg: LieAlgebra3, curve: Curve) -> Self {
        Self::frenet_family(alg, curve, Family::Binormal, (0.0, 0.0, 1.0))
    }

    /// `phi = B + v T`: rulings along the tangent, base on the binormal
    /// indicatrix `s -> B(s)`.
    pub fn darboux_developable(alg: LieAlgebra3, curve: Curve) -> Self {
        Self::frenet_family(alg, curve, Family::DarbouxDevelopable, (1.0, 0.0, 0.0))
    }

    fn frenet_family(
        alg: LieAlgebra3,
        curve: Curve,
        family: Family,
        coeffs: (f64, f64, f64),
    ) -> Self {
        let (lo, hi) = curve.domain();
        let director = DirectorSpec::FrenetCombo {
            a: SmoothFn::constant(coeffs.0).with_domain(lo, hi),
            b: SmoothFn::constant(coeffs.1).with_domain(lo, hi),
            c: SmoothFn::constant(coeffs.2).with_domain(lo, hi),
        };
        RuledSurfaceSpec {
            alg,
            curve,
            director,
            family,
        }
    }

    /// `phi = alpha + v W` with the modified Darboux director
    /// `W = (tau T + kappa B) / sqrt(kappa^2 + tau^2)`. The coefficient
    /// functions are derived from the computed frame field and
    /// differentiated by finite differences.
    pub fn rectifying(alg: LieAlgebra3, curve: Curve) -> Self {
        let (lo, hi) = curve.domain();
        let scalar = |pick: fn(&FrenetData) -> f64| {
            let alg = alg.clone();
            let curve = curve.clone();
            SmoothFn::finite_difference_with_step(
                move |s| {
                    frenet_at(&alg, &curve, s)
                        .map(|d| {
                            let c = 1.0 / (d.kappa * d.kappa + d.tau * d.tau).sqrt();
                            c * pick(&d)
                        })
                        .unwrap_or(f64::NAN)
                },
                crate::frenet::DERIVED_FIELD_STEP,
            )
            .with_domain(lo, hi)
        };
        let director = DirectorSpec::FrenetCombo {
            a: scalar(|d| d.tau),
            b: SmoothFn::constant(0.0).with_domain(lo, hi),
            c: scalar(|d| d.kappa),
        };
        RuledSurfaceSpec {
            alg,
            curve,
            director,
            family: Family::Rectifying,
        }
    }

    pub fn algebra(&self) -> &LieAlgebra3 {
        &self.alg
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn director(&self) -> &DirectorSpec {
        &self.director
    }

    pub fn frenet(&self, s: f64) -> Result<FrenetData, SurfaceError> {
        self.check_domain(s)?;
        Ok(frenet_at(&self.alg, &self.curve, s)?)
    }

    fn check_domain(&self, s: f64) -> Result<(), SurfaceError> {
        if !self.curve.contains(s) {
            let (lo, hi) = self.curve.domain();
            return Err(SurfaceError::OutsideDomain { s, lo, hi });
        }
        Ok(())
    }

    /// Director coefficients `(a, b, c)` over the Frenet frame, if applicable.
    fn combo_coefficients(&self, s: f64) -> Result<Option<(f64, f64, f64)>, SurfaceError> {
        match &self.director {
            DirectorSpec::LeftInvariant(_) => Ok(None),
            DirectorSpec::FrenetCombo { a, b, c } => Ok(Some((a.eval(s), b.eval(s), c.eval(s)))),
        }
    }

    /// The director `X(s)` in algebra coordinates.
    pub fn director_at(&self, s: f64) -> Result<Vec3g, SurfaceError> {
        match &self.director {
            DirectorSpec::LeftInvariant(x) => {
                self.check_domain(s)?;
                Ok(*x)
            }
            DirectorSpec::FrenetCombo { .. } => {
                let frame = self.frenet(s)?;
                let (a, b, c) = self.combo_coefficients(s)?.expect("combo");
                Ok(frame.tangent * a + frame.normal * b + frame.binormal * c)
            }
        }
    }

    /// Covariant derivative `D_T X` of the director along the base curve.
    ///
    /// Left-invariant directors have `Xdot = 0`, so `D_T X = (1/2)[T, X]`.
    /// Frenet combinations expand through the frame equations:
    /// `D_T X = (a' - b kappa) T + (a kappa + b' - c (tau + tau_G)) N +
    /// (b (tau + tau_G) + c') B`.
    pub fn director_covariant_deriv(&self, s: f64) -> Result<Vec3g, SurfaceError> {
        match &self.director {
            DirectorSpec::LeftInvariant(x) => {
                let frame = self.frenet(s)?;
                Ok(0.5 * self.alg.bracket(frame.tangent, *x))
            }
            DirectorSpec::FrenetCombo { a, b, c } => {
                let frame = self.frenet(s)?;
                let (av, bv, cv) = (a.eval(s), b.eval(s), c.eval(s));
                let (ad, bd, cd) = (
                    a.deriv(s, DerivOrder::First)?,
                    b.deriv(s, DerivOrder::First)?,
                    c.deriv(s, DerivOrder::First)?,
                );
                let tt = frame.tau + frame.tau_g;
                Ok(frame.tangent * (ad - bv * frame.kappa)
                    + frame.normal * (av * frame.kappa + bd - cv * tt)
                    + frame.binormal * (bv * tt + cd))
            }
        }
    }

    /// Base point: the curve itself, except the developable built on the
    /// binormal indicatrix, whose base is `B(s)`.
    pub fn base_point(&self, s: f64) -> Result<Vec3g, SurfaceError> {
        match self.family {
            Family::DarbouxDevelopable => Ok(self.frenet(s)?.binormal),
            _ => {
                self.check_domain(s)?;
                Ok(self.curve.position_at(s))
            }
        }
    }

    /// Covariant velocity of the base: `T` for curve bases, `D_T B` for the
    /// binormal indicatrix.
    pub fn base_velocity(&self, s: f64) -> Result<Vec3g, SurfaceError> {
        match self.family {
            Family::DarbouxDevelopable => {
                let frame = self.frenet(s)?;
                Ok(frame.normal * -(frame.tau + frame.tau_g))
            }
            _ => Ok(self.frenet(s)?.tangent),
        }
    }

    /// `phi(s, v) = base(s) + v X(s)` in chart coordinates.
    pub fn evaluate(&self, s: f64, v: f64) -> Result<Vec3g, SurfaceError> {
        Ok(self.base_point(s)? + self.director_at(s)? * v)
    }

    /// All surface partials at `(s, v)`.
    pub fn partials(&self, s: f64, v: f64) -> Result<Partials, SurfaceError> {
        let frame = self.frenet(s)?;
        let phi_v = self.director_at(s)?;
        let d_t_x = self.director_covariant_deriv(s)?;
        let phi_s = self.phi_s_raw(s, v)?;
        // Covariant rule on the computed phi_s field: central difference of
        // its components plus the bracket correction.
        let h = crate::frenet::DERIVED_FIELD_STEP;
        let plus = self.phi_s_raw(s + h, v)?;
        let minus = self.phi_s_raw(s - h, v)?;
        let phi_s_dot = (plus - minus) * (1.0 / (2.0 * h));
        let phi_ss = covariant_derivative(&self.alg, frame.tangent, phi_s, phi_s_dot);
        Ok(Partials {
            phi_s,
            phi_v,
            phi_ss,
            phi_sv: d_t_x,
            phi_vv: Vec3g::ZERO,
        })
    }

    fn phi_s_raw(&self, s: f64, v: f64) -> Result<Vec3g, SurfaceError> {
        Ok(self.base_velocity(s)? + self.director_covariant_deriv(s)? * v)
    }

    /// Unit normal `U = (phi_s x phi_v) / |phi_s x phi_v|` and the area
    /// element. Errors at singular points, e.g. a tangent developable on
    /// its ruling axis `v = 0`.
    pub fn normal(&self, s: f64, v: f64) -> Result<(Vec3g, f64), SurfaceError> {
        let phi_s = self.phi_s_raw(s, v)?;
        let phi_v = self.director_at(s)?;
        let w = cross(phi_s, phi_v);
        let area = w.norm();
        if area <= SINGULARITY_TOL {
            return Err(SurfaceError::SingularPoint { s, v, area });
        }
        Ok((w * (1.0 / area), area))
    }

    /// The six fundamental-form coefficients at a regular point.
    ///
    /// `g = <phi_vv, U>` vanishes identically for ruled surfaces.
    pub fn fundamental_forms(&self, s: f64, v: f64) -> Result<FundamentalForms, SurfaceError> {
        let p = self.partials(s, v)?;
        let (normal, area_element) = self.normal(s, v)?;
        Ok(FundamentalForms {
            E: p.phi_s.dot(p.phi_s),
            F: p.phi_s.dot(p.phi_v),
            G: p.phi_v.dot(p.phi_v),
            e: p.phi_ss.dot(normal),
            f: p.phi_sv.dot(normal),
            g: p.phi_vv.dot(normal),
            normal,
            area_element,
        })
    }
}

/// The cylinder scenario: circle base in the given algebra, left-invariant
/// director `(0, 0, 1)`.
pub fn cylinder(alg: LieAlgebra3) -> RuledSurfaceSpec {
    RuledSurfaceSpec::general(alg, Curve::circle(), Vec3g::new(0.0, 0.0, 1.0))
        .expect("unit director")
}
