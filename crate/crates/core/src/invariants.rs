//! Distribution parameter, striction curve, Gaussian/mean curvature, and the
//! base-curve invariants (geodesic curvature, normal curvature, geodesic
//! torsion), each computed by two routes:
//!
//! - the *definitional* pipeline evaluates the first-principles formulas on
//!   the surface data from [`crate::surfaces`];
//! - the *closed-form* pipeline evaluates per-family reference formulas
//!   verbatim, with curvature primes supplied by finite differences.
//!
//! The closed forms are evaluated exactly as published for each family, so a
//! handful of them disagree with the definitional route by construction; the
//! [`crate::verify`] module keeps the authoritative table of which
//! comparisons assert and which only report residuals.

use thiserror::Error;

use crate::algebra::{cross, det3, Vec3g};
use crate::calculus::{CalculusError, DerivOrder, SmoothFn};
use crate::frenet::{covariant_derivative, frenet_at, FrenetError};
use crate::surfaces::{Family, FundamentalForms, RuledSurfaceSpec, SurfaceError};

/// `|D_T X|` at or below this makes the ruling cylindrical and the
/// distribution parameter a 0/0 form.
pub const DEGENERATE_RULING_TOL: f64 = 1e-10;

/// Default classification tolerance.
pub const CLASSIFY_TOL: f64 = 1e-8;

/// Structural fact about the definitional pipeline, recorded whenever a
/// classification is produced: with `g = 0` the Gaussian curvature is
/// `K = -f^2 / (EG - F^2) <= 0` at every regular point, so a positive `K`
/// cannot arise from this route even though the closed-form layer leaves the
/// sign question open.
pub const K_SIGN_NOTE: &str = "definitional K = -f^2/(EG - F^2) <= 0 at every regular point \
     (g = 0 for straight rulings); positive Gaussian curvature cannot arise in this pipeline";

#[derive(Debug, Error)]
pub enum InvariantError {
    #[error(
        "cylindrical ruling at s = {s}: |D_T X| = {norm}, distribution parameter is degenerate"
    )]
    DegenerateRuling { s: f64, norm: f64 },
    #[error("closed form for family {family} is singular at (s, v) = ({s}, {v}): denominator {denominator} = {value}")]
    FamilySingularity {
        family: &'static str,
        denominator: &'static str,
        s: f64,
        v: f64,
        value: f64,
    },
    #[error(transparent)]
    Surface(#[from] SurfaceError),
    #[error(transparent)]
    Frenet(#[from] FrenetError),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
}

/// Which route produced a record.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pipeline {
    Definitional,
    ClosedForm,
}

impl Pipeline {
    pub fn as_str(self) -> &'static str {
        match self {
            Pipeline::Definitional => "definitional",
            Pipeline::ClosedForm => "closed-form",
        }
    }
}

/// Distribution parameter value; cylindrical rulings have no finite value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DistributionParameter {
    Finite(f64),
    Degenerate,
}

impl DistributionParameter {
    pub fn finite(self) -> Option<f64> {
        match self {
            DistributionParameter::Finite(x) => Some(x),
            DistributionParameter::Degenerate => None,
        }
    }

    pub fn is_degenerate(self) -> bool {
        matches!(self, DistributionParameter::Degenerate)
    }
}

/// Geodesic curvature, normal curvature and geodesic torsion of the base
/// curve with respect to the surface.
#[derive(Debug, Clone, Copy)]
pub struct CurveInvariants {
    pub kappa_g: f64,
    pub kappa_n: f64,
    pub tau_g: f64,
}

/// Everything computed at one `(s, v)` cell.
#[derive(Debug, Clone)]
pub struct InvariantRecord {
    pub s: f64,
    pub v: f64,
    pub lambda: DistributionParameter,
    pub gauss: f64,
    pub mean: f64,
    pub kappa_g: f64,
    pub kappa_n: f64,
    pub tau_g: f64,
    pub pipeline: Pipeline,
    /// Fundamental forms; populated by the definitional pipeline only.
    pub forms: Option<FundamentalForms>,
}

/// `lambda = det(T, X, D_T X) / |D_T X|^2`, or `Degenerate` for a
/// cylindrical ruling. The value does not depend on `v`.
pub fn distribution_parameter(
    spec: &RuledSurfaceSpec,
    s: f64,
) -> Result<DistributionParameter, InvariantError> {
    let frame = spec.frenet(s)?;
    let x = spec.director_at(s)?;
    let dtx = spec.director_covariant_deriv(s)?;
    let denom = dtx.norm_squared();
    if denom.sqrt() <= DEGENERATE_RULING_TOL {
        return Ok(DistributionParameter::Degenerate);
    }
    Ok(DistributionParameter::Finite(
        det3(frame.tangent, x, dtx) / denom,
    ))
}

/// Offset coefficient `<base', D_T X> / |D_T X|^2` of the striction curve.
pub fn striction_offset(spec: &RuledSurfaceSpec, s: f64) -> Result<f64, InvariantError> {
    let dtx = spec.director_covariant_deriv(s)?;
    let denom = dtx.norm_squared();
    if denom.sqrt() <= DEGENERATE_RULING_TOL {
        return Err(InvariantError::DegenerateRuling {
            s,
            norm: denom.sqrt(),
        });
    }
    Ok(spec.base_velocity(s)?.dot(dtx) / denom)
}

/// Striction-curve point `base - (<base', D_T X>/|D_T X|^2) X`.
pub fn striction_point(spec: &RuledSurfaceSpec, s: f64) -> Result<Vec3g, InvariantError> {
    let coeff = striction_offset(spec, s)?;
    Ok(spec.base_point(s)? - spec.director_at(s)? * coeff)
}

/// `K = (eg - f^2)/(EG - F^2)` and `H = (Eg + Ge - 2Ff)/(2(EG - F^2))`
/// from the first-principles fundamental forms.
pub fn gauss_mean_definitional(
    spec: &RuledSurfaceSpec,
    s: f64,
    v: f64,
) -> Result<(f64, f64), InvariantError> {
    let forms = spec.fundamental_forms(s, v)?;
    Ok(gauss_mean_from_forms(&forms))
}

pub fn gauss_mean_from_forms(forms: &FundamentalForms) -> (f64, f64) {
    let det = forms.E * forms.G - forms.F * forms.F;
    let k = (forms.e * forms.g - forms.f * forms.f) / det;
    let h = (forms.E * forms.g + forms.G * forms.e - 2.0 * forms.F * forms.f) / (2.0 * det);
    (k, h)
}

/// `kappa_g = <U x T, D_T T>`, `kappa_n = <D_T T, U>`,
/// `tau_g = <U x D_T U, D_T T>`, with `Udot` by central differences of the
/// computed unit-normal field in `s`.
pub fn curve_invariants_definitional(
    spec: &RuledSurfaceSpec,
    s: f64,
    v: f64,
) -> Result<CurveInvariants, InvariantError> {
    let frame = spec.frenet(s)?;
    let d_t_t = frame.normal * frame.kappa;
    let (u, _) = spec.normal(s, v)?;
    let h = crate::frenet::DERIVED_FIELD_STEP;
    let (u_plus, _) = spec.normal(s + h, v)?;
    let (u_minus, _) = spec.normal(s - h, v)?;
    let u_dot = (u_plus - u_minus) * (1.0 / (2.0 * h));
    let d_t_u = covariant_derivative(spec.algebra(), frame.tangent, u, u_dot);
    Ok(CurveInvariants {
        kappa_g: cross(u, frame.tangent).dot(d_t_t),
        kappa_n: d_t_t.dot(u),
        tau_g: cross(u, d_t_u).dot(d_t_t),
    })
}

/// Scalar curvature fields of the base curve, differentiable in `s`.
struct FrameScalars {
    kappa: SmoothFn,
    tau: SmoothFn,
}

impl FrameScalars {
    fn new(spec: &RuledSurfaceSpec) -> Self {
        let make = |pick: fn(&crate::frenet::FrenetData) -> f64| {
            let alg = spec.algebra().clone();
            let curve = spec.curve().clone();
            let (lo, hi) = curve.domain();
            SmoothFn::finite_difference_with_step(
                move |s| {
                    frenet_at(&alg, &curve, s)
                        .map(|d| pick(&d))
                        .unwrap_or(f64::NAN)
                },
                crate::frenet::DERIVED_FIELD_STEP,
            )
            .with_domain(lo, hi)
        };
        FrameScalars {
            kappa: make(|d| d.kappa),
            tau: make(|d| d.tau),
        }
    }
}

/// Area-element handling for the general-family closed forms. `Unit`
/// reproduces the reference cylinder table, which tabulates `A = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AreaElement {
    Computed,
    Unit,
}

/// Shared bracket/cross data of the general family at `(s, v)`.
struct GeneralData {
    kappa: f64,
    tau_g: f64,
    x: Vec3g,
    tangent: Vec3g,
    normal: Vec3g,
    binormal: Vec3g,
    /// `[T, X]`
    tx: Vec3g,
    /// `T x X`
    cx: Vec3g,
    /// `<T x X, [T, X]>`
    ip: f64,
    /// `EG - F^2 = 1 + (v^2/4)|[T,X]|^2 - <T,X>^2`
    egf: f64,
    /// area element, possibly overridden to 1
    a: f64,
}

fn general_data(
    spec: &RuledSurfaceSpec,
    s: f64,
    v: f64,
    area: AreaElement,
) -> Result<GeneralData, InvariantError> {
    let frame = spec.frenet(s)?;
    let x = spec.director_at(s)?;
    let alg = spec.algebra();
    let tx = alg.bracket(frame.tangent, x);
    let cx = cross(frame.tangent, x);
    let ip = cx.dot(tx);
    let f = frame.tangent.dot(x);
    let egf = 1.0 + v * v / 4.0 * tx.norm_squared() - f * f;
    let a = match area {
        AreaElement::Computed => egf.sqrt(),
        AreaElement::Unit => 1.0,
    };
    Ok(GeneralData {
        kappa: frame.kappa,
        tau_g: frame.tau_g,
        x,
        tangent: frame.tangent,
        normal: frame.normal,
        binormal: frame.binormal,
        tx,
        cx,
        ip,
        egf,
        a,
    })
}

/// General-family closed forms for `(K, H)` with a left-invariant director.
pub fn general_gauss_mean_closed(
    spec: &RuledSurfaceSpec,
    s: f64,
    v: f64,
    area: AreaElement,
) -> Result<(f64, f64), InvariantError> {
    let d = general_data(spec, s, v, area)?;
    let alg = spec.algebra();
    let k = -d.ip * d.ip / (4.0 * d.a * d.a * d.egf);
    let t_tx = alg.bracket(d.tangent, d.tx); // [T, [T, X]]
    let nx = alg.bracket(d.normal, d.x); // [N, X]
    let txx = cross(d.tx, d.x); // [T, X] x X
    let e_terms = -d.kappa * d.binormal.dot(d.x)
        - (v * d.kappa / 2.0) * cross(d.normal, d.x).dot(d.tx)
        + (v * d.kappa / 2.0) * nx.dot(d.cx)
        + (v * v * d.kappa / 4.0) * nx.dot(txx)
        + 0.5 * t_tx.dot(d.cx)
        + (v / 4.0) * t_tx.dot(txx);
    let h = (e_terms / d.a - d.tangent.dot(d.x) * d.ip / d.a) / (2.0 * d.egf);
    Ok((k, h))
}

/// General-family closed forms for the base-curve invariants.
pub fn general_curve_invariants_closed(
    spec: &RuledSurfaceSpec,
    s: f64,
    v: f64,
    area: AreaElement,
) -> Result<CurveInvariants, InvariantError> {
    let d = general_data(spec, s, v, area)?;
    let alg = spec.algebra();
    let xn = d.x.dot(d.normal);
    let xb = d.x.dot(d.binormal);
    let kappa_g = d.kappa / d.a * (xn + v * d.tau_g * xb);
    let kappa_n = d.kappa / d.a * (-xb + v / 2.0 * d.tx.dot(cross(d.x, d.normal)));
    // L = kappa [X, N] + (1/2) [T, [T, X]]
    let l = alg.bracket(d.x, d.normal) * d.kappa + alg.bracket(d.tangent, d.tx) * 0.5;
    let lx = cross(l, d.x);
    let txx = cross(d.tx, d.x);
    let tx_t = alg.bracket(d.tx, d.tangent); // [[T, X], T]
    let a2 = d.a * d.a;
    let tau_g = xn
        * (d.kappa / a2 * (d.kappa * xb + v / 2.0 * d.tangent.dot(lx))
            + v * d.kappa / (2.0 * a2)
                * (d.kappa * d.tx.dot(cross(d.normal, d.x)) + v / 2.0 * d.tx.dot(lx))
            + 1.0 / (2.0 * a2)
                * (v * d.kappa / 2.0 * tx_t.dot(d.cx) + v * v * d.kappa / 4.0 * tx_t.dot(txx)))
        - v * d.kappa * d.tau_g / a2 * d.tx.dot(d.cx) * xb;
    Ok(CurveInvariants {
        kappa_g,
        kappa_n,
        tau_g,
    })
}

fn family_singularity(
    family: Family,
    denominator: &'static str,
    s: f64,
    v: f64,
    value: f64,
) -> InvariantError {
    InvariantError::FamilySingularity {
        family: family.as_str(),
        denominator,
        s,
        v,
        value,
    }
}

/// Closed-form `(K, H)` for the surface family, evaluated verbatim.
pub fn gauss_mean_closed_form(
    spec: &RuledSurfaceSpec,
    s: f64,
    v: f64,
) -> Result<(f64, f64), InvariantError> {
    let family = spec.family();
    match family {
        Family::General => general_gauss_mean_closed(spec, s, v, AreaElement::Computed),
        Family::TangentDevelopable => {
            let fr = spec.frenet(s)?;
            let denom = 2.0 * v * v * fr.kappa;
            if denom.abs() <= 1e-12 {
                return Err(family_singularity(family, "2 v^2 kappa", s, v, denom));
            }
            Ok((0.0, -(fr.tau + fr.tau_g) / denom))
        }
        Family::Normal => {
            let fr = spec.frenet(s)?;
            let scalars = FrameScalars::new(spec);
            let tt = fr.tau + fr.tau_g;
            let a2 = v * v * tt * tt + (1.0 - v * fr.kappa).powi(2);
            if a2.sqrt() <= 1e-12 {
                return Err(family_singularity(family, "A", s, v, a2.sqrt()));
            }
            let kappa_prime = scalars.kappa.deriv(s, DerivOrder::First)?;
            let k = -(tt / a2) * (tt / a2);
            let h = -v * tt * (1.0 - v * fr.kappa + v * kappa_prime) / (2.0 * a2.powf(1.5));
            Ok((k, h))
        }
        Family::Binormal => {
            let fr = spec.frenet(s)?;
            let scalars = FrameScalars::new(spec);
            let tt = fr.tau + fr.tau_g;
            let a2 = 1.0 + v * v * tt * tt;
            let tau_prime = scalars.tau.deriv(s, DerivOrder::First)?;
            let k = -(tt / a2) * (tt / a2);
            let h = -(-v * v * fr.kappa * tt + v * tau_prime - fr.kappa) / (2.0 * a2.powf(1.5));
            Ok((k, h))
        }
        Family::DarbouxDevelopable => {
            let fr = spec.frenet(s)?;
            let denom = fr.tau + fr.tau_g - v * fr.kappa;
            if denom.abs() <= 1e-10 {
                return Err(family_singularity(
                    family,
                    "tau + tau_G - v kappa",
                    s,
                    v,
                    denom,
                ));
            }
            Ok((0.0, 1.0 / (2.0 * denom)))
        }
        Family::Rectifying => {
            let r = RectifyingClosed::new(spec, s, v)?;
            Ok((r.gauss()?, r.mean()?))
        }
    }
}

/// Closed-form base-curve invariants for the surface family.
pub fn curve_invariants_closed_form(
    spec: &RuledSurfaceSpec,
    s: f64,
    v: f64,
) -> Result<CurveInvariants, InvariantError> {
    let family = spec.family();
    match family {
        Family::General => general_curve_invariants_closed(spec, s, v, AreaElement::Computed),
        Family::TangentDevelopable => {
            let fr = spec.frenet(s)?;
            Ok(CurveInvariants {
                kappa_g: -fr.kappa,
                kappa_n: 0.0,
                tau_g: 0.0,
            })
        }
        Family::Normal => {
            let fr = spec.frenet(s)?;
            let tt = fr.tau + fr.tau_g;
            let a = (v * v * tt * tt + (1.0 - v * fr.kappa).powi(2)).sqrt();
            if a <= 1e-12 {
                return Err(family_singularity(family, "A", s, v, a));
            }
            let kappa_g = fr.kappa * (1.0 - v * fr.kappa) / a;
            // tau_g = kappa (p q' - q p') with p = v(tau+tau_G)/A, q = (1-v kappa)/A.
            let (p_fn, q_fn) = normal_family_ratio_fns(spec, v);
            let p = p_fn.eval(s);
            let q = q_fn.eval(s);
            let p_prime = p_fn.deriv(s, DerivOrder::First)?;
            let q_prime = q_fn.deriv(s, DerivOrder::First)?;
            let tau_g = fr.kappa * (p * q_prime - q * p_prime);
            Ok(CurveInvariants {
                kappa_g,
                kappa_n: 0.0,
                tau_g,
            })
        }
        Family::Binormal => {
            let fr = spec.frenet(s)?;
            let tt = fr.tau + fr.tau_g;
            let a = (1.0 + v * v * tt * tt).sqrt();
            let tau_g = v * fr.kappa * tt * (a * tt - fr.tau_g) / (a * a);
            Ok(CurveInvariants {
                kappa_g: fr.kappa / a,
                kappa_n: -fr.kappa / a,
                tau_g,
            })
        }
        Family::DarbouxDevelopable => {
            let fr = spec.frenet(s)?;
            Ok(CurveInvariants {
                kappa_g: fr.kappa,
                kappa_n: 0.0,
                tau_g: 0.0,
            })
        }
        Family::Rectifying => {
            let r = RectifyingClosed::new(spec, s, v)?;
            Ok(r.curve_invariants()?)
        }
    }
}

/// Closed-form distribution parameter for the surface family.
pub fn distribution_parameter_closed_form(
    spec: &RuledSurfaceSpec,
    s: f64,
) -> Result<DistributionParameter, InvariantError> {
    match spec.family() {
        Family::General => {
            let d = general_data(spec, s, 0.0, AreaElement::Computed)?;
            let denom = d.tx.norm_squared();
            if denom.sqrt() <= DEGENERATE_RULING_TOL {
                return Ok(DistributionParameter::Degenerate);
            }
            Ok(DistributionParameter::Finite(2.0 * d.ip / denom))
        }
        Family::TangentDevelopable | Family::DarbouxDevelopable => {
            Ok(DistributionParameter::Finite(0.0))
        }
        Family::Normal => {
            let fr = spec.frenet(s)?;
            let tt = fr.tau + fr.tau_g;
            Ok(DistributionParameter::Finite(
                tt / (fr.kappa * fr.kappa + tt * tt),
            ))
        }
        Family::Binormal => {
            let fr = spec.frenet(s)?;
            let tt = fr.tau + fr.tau_g;
            if tt.abs() <= DEGENERATE_RULING_TOL {
                return Ok(DistributionParameter::Degenerate);
            }
            Ok(DistributionParameter::Finite(1.0 / tt))
        }
        Family::Rectifying => {
            let r = RectifyingClosed::new(spec, s, 0.0)?;
            Ok(r.lambda())
        }
    }
}

/// `p = v(tau+tau_G)/A` and `q = (1-v kappa)/A` as differentiable fields of
/// `s` at fixed `v`, for the normal-family geodesic torsion.
fn normal_family_ratio_fns(spec: &RuledSurfaceSpec, v: f64) -> (SmoothFn, SmoothFn) {
    let make = |numerator: fn(f64, f64, f64, f64) -> f64| {
        let alg = spec.algebra().clone();
        let curve = spec.curve().clone();
        let (lo, hi) = curve.domain();
        SmoothFn::finite_difference_with_step(
            move |s| {
                frenet_at(&alg, &curve, s)
                    .map(|d| {
                        let tt = d.tau + d.tau_g;
                        let a = (v * v * tt * tt + (1.0 - v * d.kappa).powi(2)).sqrt();
                        numerator(v, d.kappa, tt, a)
                    })
                    .unwrap_or(f64::NAN)
            },
            crate::frenet::DERIVED_FIELD_STEP,
        )
        .with_domain(lo, hi)
    };
    (
        make(|v, _k, tt, a| v * tt / a),
        make(|v, k, _tt, a| (1.0 - v * k) / a),
    )
}

/// Verbatim closed forms of the rectifying family. The curvature scalars
/// `c = 1/sqrt(kappa^2 + tau^2)`, `(c kappa)` and `(c tau)` are built as
/// finite-difference fields so the first and second primes exist without
/// analytic input.
struct RectifyingClosed {
    alg: crate::algebra::LieAlgebra3,
    curve: crate::frenet::Curve,
    s: f64,
    v: f64,
    kappa: f64,
    tau: f64,
    tau_g: f64,
    c: f64,
    ck: SmoothFn,
    ckp: f64,
    ctp: f64,
    a: f64,
}

impl RectifyingClosed {
    fn new(spec: &RuledSurfaceSpec, s: f64, v: f64) -> Result<Self, InvariantError> {
        let fr = spec.frenet(s)?;
        let make = |pick: fn(f64, f64) -> f64| {
            let alg = spec.algebra().clone();
            let curve = spec.curve().clone();
            let (lo, hi) = curve.domain();
            SmoothFn::finite_difference_with_step(
                move |s| {
                    frenet_at(&alg, &curve, s)
                        .map(|d| pick(d.kappa, d.tau) / (d.kappa * d.kappa + d.tau * d.tau).sqrt())
                        .unwrap_or(f64::NAN)
                },
                crate::frenet::DERIVED_FIELD_STEP,
            )
            .with_domain(lo, hi)
        };
        let ck = make(|k, _| k);
        let ct = make(|_, t| t);
        let ckp = ck.deriv(s, DerivOrder::First)?;
        let ctp = ct.deriv(s, DerivOrder::First)?;
        let c = 1.0 / (fr.kappa * fr.kappa + fr.tau * fr.tau).sqrt();
        let a2 = v
            * v
            * c.powi(4)
            * fr.kappa
            * fr.kappa
            * fr.tau_g
            * fr.tau_g
            * (fr.kappa * fr.kappa + fr.tau * fr.tau)
            + (v * c * ckp * (fr.tau - fr.kappa) - c * fr.kappa).powi(2);
        Ok(RectifyingClosed {
            alg: spec.algebra().clone(),
            curve: spec.curve().clone(),
            s,
            v,
            kappa: fr.kappa,
            tau: fr.tau,
            tau_g: fr.tau_g,
            c,
            ck,
            ckp,
            ctp,
            a: a2.sqrt(),
        })
    }

    fn lambda(&self) -> DistributionParameter {
        let num = self.c * self.c * self.kappa * self.kappa * self.tau_g;
        let denom = self.ctp * self.ctp
            + self.ckp * self.ckp
            + self.c * self.c * self.kappa * self.kappa * self.tau_g * self.tau_g;
        if denom <= DEGENERATE_RULING_TOL * DEGENERATE_RULING_TOL {
            DistributionParameter::Degenerate
        } else {
            DistributionParameter::Finite(num / denom)
        }
    }

    /// `EG - F^2` with the family's own E and F expressions.
    fn denom(&self) -> f64 {
        let (v, c, k, t) = (self.v, self.c, self.kappa, self.tau);
        (1.0 + v * self.ckp).powi(2) + (v * self.ckp).powi(2) + (v * c * k * self.tau_g).powi(2)
            - (c * t + v * c * self.ckp * (k + t)).powi(2)
    }

    fn second_form_f(&self) -> f64 {
        self.c
            * self.c
            * self.kappa
            * self.kappa
            * self.tau_g
            * (1.0 + self.v * (self.ckp - self.ctp))
    }

    fn check_regular(&self) -> Result<(f64, f64), InvariantError> {
        let d = self.denom();
        if self.a <= 1e-12 {
            return Err(family_singularity(
                Family::Rectifying,
                "A",
                self.s,
                self.v,
                self.a,
            ));
        }
        if d.abs() <= 1e-12 {
            return Err(family_singularity(
                Family::Rectifying,
                "EG - F^2",
                self.s,
                self.v,
                d,
            ));
        }
        Ok((self.a, d))
    }

    fn gauss(&self) -> Result<f64, InvariantError> {
        let (a, d) = self.check_regular()?;
        let f = self.second_form_f();
        Ok(-(f * f) / (a * a * d))
    }

    fn mean(&self) -> Result<f64, InvariantError> {
        let (a, d) = self.check_regular()?;
        let (v, c, k, t, tg) = (self.v, self.c, self.kappa, self.tau, self.tau_g);
        let ckpp = self.ck.deriv(self.s, DerivOrder::Second)?;
        let e_t = -v * v * c * c * k * tg * ckpp * (k + t)
            - v * v * c * (k - t).powi(2) * self.ckp * self.ckp
            - 2.0 * v * v * c * tg * self.ckp * self.ckp * (k + t)
            + 2.0 * v * c * k * self.ckp * (t - k - tg)
            - c * k * k
            + v * v * c.powi(3) * k * k * tg * tg * (t * t - k * k + t * tg);
        let f_first = c * t + v * c * self.ckp * (k + t);
        Ok((e_t - 2.0 * f_first * self.second_form_f()) / (a * 2.0 * d))
    }

    fn curve_invariants(&self) -> Result<CurveInvariants, InvariantError> {
        let (a, _) = self.check_regular()?;
        let (v, c, k, t, tg) = (self.v, self.c, self.kappa, self.tau, self.tau_g);
        let kappa_g = v * c * c * k * k * t * tg / a;
        let kappa_n = k * (v * c * self.ckp * (t - k) - c * k) / a;
        // The geodesic torsion differentiates two normal-component ratios of
        // the family's U field; both are rebuilt as s-fields at fixed v.
        let (p1, p2) = self.u_ratio_fns();
        let p1p = p1.deriv(self.s, DerivOrder::First)?;
        let p2p = p2.deriv(self.s, DerivOrder::First)?;
        let tau_g_val = k / a
            * (v * c * c * k * t * tg * (p1p - (v * c * k * self.ckp * (t - k) - c * k * k) / a)
                - v * c
                    * c
                    * k
                    * k
                    * tg
                    * ((v * c * self.ckp * (t - k) - c * k) * (t + 2.0 * tg) / a + p2p));
        Ok(CurveInvariants {
            kappa_g,
            kappa_n,
            tau_g: tau_g_val,
        })
    }

    /// `p1 = -v c^2 kappa^2 tau_G / A` and `p2 = v c^2 kappa tau tau_G / A`
    /// as fields of `s` at fixed `v`. Since `c^2 (kappa^2 + tau^2) = 1`,
    /// both numerators and the family's `A` reduce to expressions in
    /// `c kappa`, `c tau`, `(c kappa)'` and `tau_G`.
    fn u_ratio_fns(&self) -> (SmoothFn, SmoothFn) {
        let make = |with_tau: bool| {
            let alg = self.alg.clone();
            let curve = self.curve.clone();
            let ck = self.ck.clone();
            let v = self.v;
            let (lo, hi) = self.curve.domain();
            SmoothFn::finite_difference_with_step(
                move |s| {
                    let Ok(d) = frenet_at(&alg, &curve, s) else {
                        return f64::NAN;
                    };
                    let c = 1.0 / (d.kappa * d.kappa + d.tau * d.tau).sqrt();
                    let (ckv, ctv) = (c * d.kappa, c * d.tau);
                    let ckp = ck.deriv(s, DerivOrder::First).unwrap_or(f64::NAN);
                    let a = (v * v * ckv * ckv * d.tau_g * d.tau_g
                        + (v * ckp * (ctv - ckv) - ckv).powi(2))
                    .sqrt();
                    let num = if with_tau {
                        v * ckv * ctv * d.tau_g
                    } else {
                        -v * ckv * ckv * d.tau_g
                    };
                    num / a
                },
                crate::frenet::DERIVED_FIELD_STEP,
            )
            .with_domain(lo, hi)
        };
        (make(false), make(true))
    }
}

/// One record through the requested pipeline.
pub fn evaluate_record(
    spec: &RuledSurfaceSpec,
    s: f64,
    v: f64,
    pipeline: Pipeline,
) -> Result<InvariantRecord, InvariantError> {
    match pipeline {
        Pipeline::Definitional => {
            let forms = spec.fundamental_forms(s, v)?;
            let (gauss, mean) = gauss_mean_from_forms(&forms);
            let ci = curve_invariants_definitional(spec, s, v)?;
            Ok(InvariantRecord {
                s,
                v,
                lambda: distribution_parameter(spec, s)?,
                gauss,
                mean,
                kappa_g: ci.kappa_g,
                kappa_n: ci.kappa_n,
                tau_g: ci.tau_g,
                pipeline,
                forms: Some(forms),
            })
        }
        Pipeline::ClosedForm => {
            let (gauss, mean) = gauss_mean_closed_form(spec, s, v)?;
            let ci = curve_invariants_closed_form(spec, s, v)?;
            Ok(InvariantRecord {
                s,
                v,
                lambda: distribution_parameter_closed_form(spec, s)?,
                gauss,
                mean,
                kappa_g: ci.kappa_g,
                kappa_n: ci.kappa_n,
                tau_g: ci.tau_g,
                pipeline,
                forms: None,
            })
        }
    }
}

/// Sign-of-K point type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointType {
    Hyperbolic,
    Parabolic,
    Elliptic,
}

impl PointType {
    pub fn from_gauss(k: f64, tol: f64) -> PointType {
        if k.abs() <= tol {
            PointType::Parabolic
        } else if k < 0.0 {
            PointType::Hyperbolic
        } else {
            PointType::Elliptic
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            PointType::Hyperbolic => "hyperbolic",
            PointType::Parabolic => "parabolic",
            PointType::Elliptic => "elliptic",
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct PointTypeCounts {
    pub hyperbolic: usize,
    pub parabolic: usize,
    pub elliptic: usize,
    pub singular: usize,
}

/// Base-curve flags in the limit `v -> 0` (or the nearest regular `v`).
#[derive(Debug, Clone, Copy)]
pub struct BaseCurveFlags {
    pub geodesic: bool,
    pub asymptotic: bool,
    pub principal: bool,
    pub max_kappa_g: f64,
    pub max_kappa_n: f64,
    pub max_tau_g: f64,
    /// The `v` the flags were evaluated at.
    pub v_ref: f64,
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub developable: bool,
    /// Cylindrical ruling (`D_T X = 0`): the distribution parameter is a
    /// 0/0 form and developability is decided by the second-form `f`.
    pub degenerate_ruling: bool,
    pub max_abs_lambda: f64,
    pub minimal_locus: String,
    pub point_counts: PointTypeCounts,
    pub uniform_point_type: Option<PointType>,
    pub base_curve: BaseCurveFlags,
    pub tol: f64,
    pub k_sign_note: &'static str,
}

/// Grid classification from the definitional pipeline.
pub fn classify(
    spec: &RuledSurfaceSpec,
    s_grid: &[f64],
    v_grid: &[f64],
    tol: f64,
) -> Result<Classification, InvariantError> {
    assert!(
        !s_grid.is_empty() && !v_grid.is_empty(),
        "classification grid must be nonempty"
    );
    let mut developable = true;
    let mut degenerate_ruling = false;
    let mut max_abs_lambda: f64 = 0.0;
    for &s in s_grid {
        match distribution_parameter(spec, s)? {
            DistributionParameter::Finite(l) => {
                max_abs_lambda = max_abs_lambda.max(l.abs());
                if l.abs() > tol {
                    developable = false;
                }
            }
            DistributionParameter::Degenerate => {
                degenerate_ruling = true;
                // f vanishes identically for a cylindrical ruling; verify at
                // a representative v and decide developability from it.
                let v = v_grid[v_grid.len() / 2];
                match spec.fundamental_forms(s, v) {
                    Ok(forms) => {
                        if forms.f.abs() > tol {
                            developable = false;
                        }
                    }
                    Err(SurfaceError::SingularPoint { .. }) => {}
                    Err(e) => return Err(e.into()),
                }
            }
        }
    }

    let mut counts = PointTypeCounts::default();
    let mut minimal_cells = 0usize;
    let mut regular_cells = 0usize;
    for &s in s_grid {
        for &v in v_grid {
            match spec.fundamental_forms(s, v) {
                Ok(forms) => {
                    regular_cells += 1;
                    let (k, h) = gauss_mean_from_forms(&forms);
                    match PointType::from_gauss(k, tol) {
                        PointType::Hyperbolic => counts.hyperbolic += 1,
                        PointType::Parabolic => counts.parabolic += 1,
                        PointType::Elliptic => counts.elliptic += 1,
                    }
                    if h.abs() <= tol {
                        minimal_cells += 1;
                    }
                }
                Err(SurfaceError::SingularPoint { .. }) => counts.singular += 1,
                Err(e) => return Err(e.into()),
            }
        }
    }
    let uniform_point_type = match (counts.hyperbolic, counts.parabolic, counts.elliptic) {
        (n, 0, 0) if n > 0 => Some(PointType::Hyperbolic),
        (0, n, 0) if n > 0 => Some(PointType::Parabolic),
        (0, 0, n) if n > 0 => Some(PointType::Elliptic),
        _ => None,
    };
    let minimal_locus = if regular_cells == 0 {
        "no regular cells".to_string()
    } else if minimal_cells == 0 {
        "none".to_string()
    } else if minimal_cells == regular_cells {
        format!("H = 0 at all {regular_cells} regular cells")
    } else {
        format!("H = 0 at {minimal_cells} of {regular_cells} regular cells")
    };

    let base_curve = base_curve_flags(spec, s_grid, v_grid, tol)?;
    Ok(Classification {
        developable,
        degenerate_ruling,
        max_abs_lambda,
        minimal_locus,
        point_counts: counts,
        uniform_point_type,
        base_curve,
        tol,
        k_sign_note: K_SIGN_NOTE,
    })
}

fn base_curve_flags(
    spec: &RuledSurfaceSpec,
    s_grid: &[f64],
    v_grid: &[f64],
    tol: f64,
) -> Result<BaseCurveFlags, InvariantError> {
    // v_ref = 0 unless the surface is singular there (tangent developables);
    // then the smallest regular |v| from the grid stands in for the limit.
    let s_probe = s_grid[s_grid.len() / 2];
    let mut candidates: Vec<f64> = vec![0.0];
    let mut sorted: Vec<f64> = v_grid.to_vec();
    sorted.sort_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap());
    candidates.extend(sorted);
    let v_ref = candidates
        .into_iter()
        .find(|&v| spec.normal(s_probe, v).is_ok())
        .unwrap_or(0.0);
    let mut max_kappa_g: f64 = 0.0;
    let mut max_kappa_n: f64 = 0.0;
    let mut max_tau_g: f64 = 0.0;
    for &s in s_grid {
        match curve_invariants_definitional(spec, s, v_ref) {
            Ok(ci) => {
                max_kappa_g = max_kappa_g.max(ci.kappa_g.abs());
                max_kappa_n = max_kappa_n.max(ci.kappa_n.abs());
                max_tau_g = max_tau_g.max(ci.tau_g.abs());
            }
            Err(InvariantError::Surface(SurfaceError::SingularPoint { .. })) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(BaseCurveFlags {
        geodesic: max_kappa_g <= tol,
        asymptotic: max_kappa_n <= tol,
        principal: max_tau_g <= tol,
        max_kappa_g,
        max_kappa_n,
        max_tau_g,
        v_ref,
    })
}

/// Reference cylinder table values under the `A := 1` substitution, plus the
/// mean curvature as written in the reference example. The two mean
/// curvatures disagree for `v != 0`; [`COMPAT_NOTE`] records why.
#[derive(Debug, Clone, Copy)]
pub struct CompatRecord {
    pub v: f64,
    pub gauss: f64,
    /// Mean curvature as printed in the reference table.
    pub mean_published: f64,
    /// Mean curvature from the general closed form with `A := 1`.
    pub mean_a1_closed_form: f64,
    pub kappa_g: f64,
    pub kappa_n: f64,
    pub tau_g: f64,
}

pub const COMPAT_NOTE: &str = "compat block substitutes A := 1 into the closed forms; the true \
     area element for this cylinder is A = sqrt(1 + v^2/4), so these values agree with the \
     definitional pipeline only at v = 0. The tabulated mean curvature -(v^2+2)/(v^2+4) is \
     reproduced verbatim: even with A := 1 the closed form yields -1/2 for every v.";

/// Evaluates the cylinder compat block at height `v` (so3 circle base,
/// director (0, 0, 1)), exercising the general closed forms with `A := 1`.
pub fn cylinder_compat_record(v: f64) -> CompatRecord {
    let spec = crate::surfaces::cylinder(crate::algebra::LieAlgebra3::builtin("so3").unwrap());
    let s = 0.0;
    let (gauss, mean_a1) =
        general_gauss_mean_closed(&spec, s, v, AreaElement::Unit).expect("regular");
    let ci = general_curve_invariants_closed(&spec, s, v, AreaElement::Unit).expect("regular");
    CompatRecord {
        v,
        gauss,
        mean_published: -(v * v + 2.0) / (v * v + 4.0),
        mean_a1_closed_form: mean_a1,
        kappa_g: ci.kappa_g,
        kappa_n: ci.kappa_n,
        tau_g: ci.tau_g,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::LieAlgebra3;
    use crate::frenet::Curve;
    use crate::surfaces::cylinder;

    fn so3() -> LieAlgebra3 {
        LieAlgebra3::builtin("so3").unwrap()
    }
    fn abelian() -> LieAlgebra3 {
        LieAlgebra3::builtin("abelian").unwrap()
    }

    #[test]
    fn cylinder_distribution_parameter_is_two() {
        let spec = cylinder(so3());
        for s in [0.0, 1.0, 2.5] {
            let l = distribution_parameter(&spec, s).unwrap().finite().unwrap();
            assert!((l - 2.0).abs() <= 1e-12, "lambda = {l}");
        }
    }

    #[test]
    fn tangent_developable_distribution_parameter_vanishes() {
        let spec = RuledSurfaceSpec::tangent_developable(so3(), Curve::helix(0.8, 0.6).unwrap());
        let l = distribution_parameter(&spec, 1.2)
            .unwrap()
            .finite()
            .unwrap();
        assert!(l.abs() <= 1e-10);
    }

    #[test]
    fn abelian_cylinder_ruling_is_degenerate() {
        let spec = cylinder(abelian());
        assert!(distribution_parameter(&spec, 0.7).unwrap().is_degenerate());
        assert!(matches!(
            striction_point(&spec, 0.7),
            Err(InvariantError::DegenerateRuling { .. })
        ));
    }

    #[test]
    fn base_curve_is_striction_curve_for_left_invariant_directors() {
        let spec = cylinder(so3());
        for s in [0.0, 0.8, 2.0] {
            let p = striction_point(&spec, s).unwrap();
            let base = spec.base_point(s).unwrap();
            assert!((p - base).norm() <= 1e-12);
            assert!(striction_offset(&spec, s).unwrap().abs() <= 1e-12);
        }
    }

    #[test]
    fn normal_surface_striction_offset_matches_frame_expansion() {
        // <T, D_T N>/|D_T N|^2 = -kappa / (kappa^2 + (tau + tau_G)^2).
        let spec = RuledSurfaceSpec::normal_surface(so3(), Curve::helix(0.8, 0.6).unwrap());
        let want = -0.8 / (0.8 * 0.8 + 1.1 * 1.1);
        for s in [0.3, 1.7] {
            let got = striction_offset(&spec, s).unwrap();
            assert!((got - want).abs() <= 1e-8, "got {got}, want {want}");
        }
    }

    #[test]
    fn cylinder_gauss_mean_at_base() {
        let spec = cylinder(so3());
        let (k, h) = gauss_mean_definitional(&spec, 0.9, 0.0).unwrap();
        assert!((k + 0.25).abs() <= 1e-8);
        assert!((h + 0.5).abs() <= 1e-8);
    }

    #[test]
    fn abelian_cylinder_is_flat() {
        let spec = cylinder(abelian());
        for (s, v) in [(0.0, 0.0), (1.0, 1.5)] {
            let (k, h) = gauss_mean_definitional(&spec, s, v).unwrap();
            assert!(k.abs() <= 1e-15, "K = {k}");
            // Cross-check H against the general closed form, whose bracket
            // terms all vanish here.
            let (_, h_closed) =
                general_gauss_mean_closed(&spec, s, v, AreaElement::Computed).unwrap();
            assert!((h - h_closed).abs() <= 1e-8, "H {h} vs closed {h_closed}");
        }
    }

    #[test]
    fn tangent_developable_is_flat() {
        let spec = RuledSurfaceSpec::tangent_developable(so3(), Curve::helix(0.8, 0.6).unwrap());
        let (k, _) = gauss_mean_definitional(&spec, 1.0, 0.8).unwrap();
        assert!(k.abs() <= 1e-12);
    }

    #[test]
    fn abelian_normal_surface_of_helix_is_a_helicoid() {
        // Euclidean reduction: the normal surface of a circular helix is the
        // classical helicoid, a minimal surface with K = -(tau/A^2)^2 and
        // lambda = tau/(kappa^2 + tau^2).
        let spec = RuledSurfaceSpec::normal_surface(abelian(), Curve::helix(0.8, 0.6).unwrap());
        let (kappa, tau) = (0.8, 0.6);
        for s in [0.3, 2.2] {
            let l = distribution_parameter(&spec, s).unwrap().finite().unwrap();
            assert!((l - tau / (kappa * kappa + tau * tau)).abs() <= 1e-9, "lambda = {l}");
            for v in [0.2, 1.4] {
                let (k, h) = gauss_mean_definitional(&spec, s, v).unwrap();
                assert!(h.abs() <= 1e-9, "helicoid must be minimal, got H = {h}");
                let a2 = v * v * tau * tau + (1.0 - v * kappa).powi(2);
                assert!((k + (tau / a2) * (tau / a2)).abs() <= 1e-9, "K = {k}");
            }
        }
    }

    #[test]
    fn closed_form_gauss_mean_examples() {
        // Tangent developable of the circle at v = 1: H = -(0 + 1/2)/(2*1*1).
        let td = RuledSurfaceSpec::tangent_developable(so3(), Curve::circle());
        let (k, h) = gauss_mean_closed_form(&td, 0.5, 1.0).unwrap();
        assert_eq!(k, 0.0);
        assert!((h + 0.25).abs() <= 1e-9);

        // Darboux developable of the circle at v = 1: H = 1/(2(1/2 - 1)) = -1.
        let dd = RuledSurfaceSpec::darboux_developable(so3(), Curve::circle());
        let (k, h) = gauss_mean_closed_form(&dd, 0.5, 1.0).unwrap();
        assert_eq!(k, 0.0);
        assert!((h + 1.0).abs() <= 1e-9);

        // Binormal surface of the circle at v = 1: A^2 = 1.25, K = -(0.5/1.25)^2.
        let bs = RuledSurfaceSpec::binormal_surface(so3(), Curve::circle());
        let (k, _) = gauss_mean_closed_form(&bs, 0.5, 1.0).unwrap();
        assert!((k + 0.16).abs() <= 1e-9, "K = {k}");
    }

    #[test]
    fn closed_form_family_singularities_are_named() {
        let td = RuledSurfaceSpec::tangent_developable(so3(), Curve::circle());
        let err = gauss_mean_closed_form(&td, 0.5, 0.0).unwrap_err();
        assert!(err.to_string().contains("2 v^2 kappa"), "{err}");

        let dd = RuledSurfaceSpec::darboux_developable(so3(), Curve::circle());
        // tau + tau_G - v kappa = 0.5 - v for the circle.
        let err = gauss_mean_closed_form(&dd, 0.5, 0.5).unwrap_err();
        assert!(err.to_string().contains("tau + tau_G - v kappa"), "{err}");
    }

    #[test]
    fn cylinder_curve_invariants_at_base() {
        let spec = cylinder(so3());
        let ci = curve_invariants_definitional(&spec, 1.3, 0.0).unwrap();
        assert!(ci.kappa_g.abs() <= 1e-8, "kappa_g = {}", ci.kappa_g);
        assert!((ci.kappa_n + 1.0).abs() <= 1e-8, "kappa_n = {}", ci.kappa_n);
        assert!(ci.tau_g.abs() <= 1e-8, "tau_g = {}", ci.tau_g);
    }

    #[test]
    fn tangent_developable_curve_invariants() {
        let spec = RuledSurfaceSpec::tangent_developable(so3(), Curve::helix(0.8, 0.6).unwrap());
        let ci = curve_invariants_definitional(&spec, 1.0, 0.7).unwrap();
        assert!((ci.kappa_g + 0.8).abs() <= 1e-6);
        assert!(ci.kappa_n.abs() <= 1e-6);
        assert!(ci.tau_g.abs() <= 1e-6);
    }

    #[test]
    fn normal_surface_base_curve_is_asymptotic() {
        let spec = RuledSurfaceSpec::normal_surface(so3(), Curve::helix(0.8, 0.6).unwrap());
        for (s, v) in [(0.4, 0.5), (1.6, 1.3)] {
            let ci = curve_invariants_definitional(&spec, s, v).unwrap();
            assert!(ci.kappa_n.abs() <= 1e-8, "kappa_n = {}", ci.kappa_n);
        }
    }

    #[test]
    fn closed_form_curve_invariant_examples() {
        // Binormal family: kappa_g = kappa/A, kappa_n = -kappa/A as written.
        let bs = RuledSurfaceSpec::binormal_surface(so3(), Curve::helix(0.8, 0.6).unwrap());
        let ci = curve_invariants_closed_form(&bs, 0.7, 1.0).unwrap();
        let a = (1.0f64 + 1.1 * 1.1).sqrt();
        assert!((ci.kappa_g - 0.8 / a).abs() <= 1e-9);
        assert!((ci.kappa_n + 0.8 / a).abs() <= 1e-9);

        // Normal family at v kappa = 1: kappa_g = 0.
        let ns = RuledSurfaceSpec::normal_surface(so3(), Curve::helix(0.8, 0.6).unwrap());
        let ci = curve_invariants_closed_form(&ns, 0.7, 1.25).unwrap();
        assert!(ci.kappa_g.abs() <= 1e-12);
    }

    #[test]
    fn general_closed_forms_with_orthogonal_director_numerators_vanish() {
        // Director orthogonal to N and B (i.e. along T): the closed-form
        // geodesic curvature and torsion vanish structurally; evaluate with
        // A := 1 since the surface itself is singular there.
        let alg = so3();
        let curve = Curve::helix(0.8, 0.6).unwrap();
        let s = 0.9;
        let frame = frenet_at(&alg, &curve, s).unwrap();
        let spec = RuledSurfaceSpec::general(alg, curve, frame.tangent).unwrap();
        let ci = general_curve_invariants_closed(&spec, s, 0.8, AreaElement::Unit).unwrap();
        assert!(ci.kappa_g.abs() <= 1e-9, "kappa_g = {}", ci.kappa_g);
        assert!(ci.tau_g.abs() <= 1e-9, "tau_g = {}", ci.tau_g);
    }

    #[test]
    fn lambda_definitional_matches_closed_form_for_left_invariant() {
        let directors = [
            Vec3g::new(0.0, 0.0, 1.0),
            Vec3g::new(0.6, 0.0, 0.8),
            Vec3g::new(0.48, 0.6, 0.64).normalized(1e-12).unwrap(),
        ];
        for x in directors {
            let spec = RuledSurfaceSpec::general(so3(), Curve::circle(), x).unwrap();
            for s in [0.2, 1.9] {
                let l_def = distribution_parameter(&spec, s).unwrap();
                let l_closed = distribution_parameter_closed_form(&spec, s).unwrap();
                match (l_def, l_closed) {
                    (DistributionParameter::Finite(a), DistributionParameter::Finite(b)) => {
                        assert!((a - b).abs() <= 1e-8, "{a} vs {b}")
                    }
                    (a, b) => assert_eq!(a.is_degenerate(), b.is_degenerate(), "{a:?} vs {b:?}"),
                }
            }
        }
    }

    #[test]
    fn rectifying_lambda_matches_definitional_on_non_helix() {
        // A plane-ish unit-speed curve with varying curvature ratio: take a
        // helix in a *different* algebra so tau_G changes the balance, and
        // compare the two lambda routes.
        let spec = RuledSurfaceSpec::rectifying(so3(), Curve::helix(0.8, 0.6).unwrap());
        for s in [0.4, 1.5] {
            let l_def = distribution_parameter(&spec, s).unwrap().finite().unwrap();
            let l_closed = distribution_parameter_closed_form(&spec, s)
                .unwrap()
                .finite()
                .unwrap();
            assert!((l_def - l_closed).abs() <= 1e-5, "{l_def} vs {l_closed}");
        }
    }

    #[test]
    fn abelian_rectifying_of_helix_is_degenerate_cylinder() {
        // The modified Darboux director of a constant-slope curve is constant
        // in the abelian algebra, so the ruling is cylindrical.
        let spec = RuledSurfaceSpec::rectifying(abelian(), Curve::helix(0.8, 0.6).unwrap());
        assert!(distribution_parameter(&spec, 1.0).unwrap().is_degenerate());
    }

    #[test]
    fn classify_tangent_developable() {
        let spec = RuledSurfaceSpec::tangent_developable(so3(), Curve::helix(0.8, 0.6).unwrap());
        let s_grid: Vec<f64> = (0..9).map(|i| 0.2 + i as f64 * 0.4).collect();
        let v_grid: Vec<f64> = (0..7).map(|i| 0.1 + i as f64 * 0.3).collect();
        let c = classify(&spec, &s_grid, &v_grid, 1e-8).unwrap();
        assert!(c.developable);
        assert_eq!(c.uniform_point_type, Some(PointType::Parabolic));
        assert!(!c.base_curve.geodesic);
        assert!(c.base_curve.asymptotic);
        assert!(c.base_curve.principal);
        assert!(
            c.base_curve.v_ref > 0.0,
            "v = 0 is singular, flags use the nearest ruling"
        );
    }

    #[test]
    fn classify_binormal_surface() {
        let spec = RuledSurfaceSpec::binormal_surface(so3(), Curve::helix(0.8, 0.6).unwrap());
        let s_grid: Vec<f64> = (0..9).map(|i| 0.2 + i as f64 * 0.4).collect();
        let v_grid: Vec<f64> = (0..7).map(|i| 0.1 + i as f64 * 0.3).collect();
        let c = classify(&spec, &s_grid, &v_grid, 1e-8).unwrap();
        assert!(!c.developable);
        assert_eq!(c.uniform_point_type, Some(PointType::Hyperbolic));
        // The unit normal at v = 0 is -N, so the base curve is a geodesic of
        // its binormal surface and is not asymptotic.
        assert!(c.base_curve.geodesic);
        assert!(!c.base_curve.asymptotic);
    }

    #[test]
    fn classify_cylinder_in_so3_not_developable() {
        let spec = cylinder(so3());
        let s_grid: Vec<f64> = (0..8).map(|i| i as f64 * 0.7).collect();
        let v_grid = [-1.0, 0.0, 1.0];
        let c = classify(&spec, &s_grid, &v_grid, 1e-8).unwrap();
        assert!(!c.developable);
        assert!((c.max_abs_lambda - 2.0).abs() <= 1e-9);
        assert!(!c.degenerate_ruling);
    }

    #[test]
    fn classify_abelian_cylinder_developable() {
        let spec = cylinder(abelian());
        let s_grid: Vec<f64> = (0..8).map(|i| i as f64 * 0.7).collect();
        let v_grid = [-1.0, 0.0, 1.0];
        let c = classify(&spec, &s_grid, &v_grid, 1e-8).unwrap();
        assert!(c.developable);
        assert!(c.degenerate_ruling);
        assert_eq!(c.k_sign_note, K_SIGN_NOTE);
    }

    #[test]
    fn compat_block_reproduces_reference_table() {
        for v in [0.0_f64, 1.0, 2.0] {
            let r = cylinder_compat_record(v);
            assert!(
                (r.gauss - (-1.0 / (v * v + 4.0))).abs() <= 1e-12,
                "K at v = {v}"
            );
            assert!((r.kappa_g - v / 2.0).abs() <= 1e-12, "kappa_g at v = {v}");
            assert!((r.kappa_n + 1.0).abs() <= 1e-12, "kappa_n at v = {v}");
            assert!((r.tau_g + v / 2.0).abs() <= 1e-12, "tau_g at v = {v}");
            assert!((r.mean_published - (-(v * v + 2.0) / (v * v + 4.0))).abs() <= 1e-15);
            // The closed form with A := 1 stays at -1/2 for this cylinder.
            assert!((r.mean_a1_closed_form + 0.5).abs() <= 1e-12);
        }
    }

    #[test]
    fn lambda_is_independent_of_v() {
        let spec = RuledSurfaceSpec::binormal_surface(so3(), Curve::helix(0.8, 0.6).unwrap());
        let a = evaluate_record(&spec, 0.9, 0.2, Pipeline::Definitional).unwrap();
        let b = evaluate_record(&spec, 0.9, 1.7, Pipeline::Definitional).unwrap();
        let (la, lb) = (a.lambda.finite().unwrap(), b.lambda.finite().unwrap());
        assert!((la - lb).abs() <= 1e-8);
    }

    #[test]
    fn definitional_gauss_curvature_is_nonpositive() {
        let specs = [
            cylinder(so3()),
            RuledSurfaceSpec::normal_surface(so3(), Curve::helix(0.8, 0.6).unwrap()),
            RuledSurfaceSpec::rectifying(so3(), Curve::helix(0.8, 0.6).unwrap()),
        ];
        for spec in &specs {
            for (s, v) in [(0.3, 0.4), (1.2, 1.6)] {
                let (k, _) = gauss_mean_definitional(spec, s, v).unwrap();
                assert!(k <= 1e-12, "K = {k}");
            }
        }
    }
}
