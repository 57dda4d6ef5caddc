//! Derivative engine for scalar and vector functions of arc length.
//!
//! Functions carry either analytic derivative callbacks or central
//! finite-difference stencils (orders 1-3). The default steps balance
//! truncation against round-off: `eps^(1/3)` for first derivatives and
//! `eps^(1/4)` for second/third, scaled by `max(1, |s|)`.

use std::sync::Arc;

use thiserror::Error;

use crate::algebra::Vec3g;

pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Debug, Error)]
pub enum CalculusError {
    #[error("derivative stencil leaves the declared domain: s = {s}, stencil half-width {half_width}, domain [{lo}, {hi}]")]
    DomainExceeded {
        s: f64,
        half_width: f64,
        lo: f64,
        hi: f64,
    },
}

/// Derivative order accepted by [`SmoothFn::deriv`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivOrder {
    First,
    Second,
    Third,
}

impl DerivOrder {
    pub fn as_u8(self) -> u8 {
        match self {
            DerivOrder::First => 1,
            DerivOrder::Second => 2,
            DerivOrder::Third => 3,
        }
    }
}

/// Default step for the central stencil of the given order at `s`.
///
/// The third-order step keeps the `eps^(1/4)` scaling but widens it: the
/// 5-point stencil divides by `2 h^3`, so round-off grows like `eps / h^3`
/// and needs more room than the second-difference case.
pub fn default_step(order: DerivOrder, s: f64) -> f64 {
    let scale = s.abs().max(1.0);
    match order {
        DerivOrder::First => f64::EPSILON.cbrt() * scale,
        DerivOrder::Second => f64::EPSILON.powf(0.25) * scale,
        DerivOrder::Third => 5.0 * f64::EPSILON.powf(0.25) * scale,
    }
}

#[derive(Clone)]
enum Mode {
    Analytic {
        d1: ScalarFn,
        d2: ScalarFn,
        d3: ScalarFn,
    },
    FiniteDifference {
        step: Option<f64>,
    },
}

/// Scalar function of arc length with derivatives up to order 3.
#[derive(Clone)]
pub struct SmoothFn {
    eval: ScalarFn,
    mode: Mode,
    domain: (f64, f64),
}

impl SmoothFn {
    /// Analytic mode: the three derivative callbacks are trusted as given.
    pub fn analytic<F, D1, D2, D3>(f: F, d1: D1, d2: D2, d3: D3) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
        D1: Fn(f64) -> f64 + Send + Sync + 'static,
        D2: Fn(f64) -> f64 + Send + Sync + 'static,
        D3: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        SmoothFn {
            eval: Arc::new(f),
            mode: Mode::Analytic {
                d1: Arc::new(d1),
                d2: Arc::new(d2),
                d3: Arc::new(d3),
            },
            domain: (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// Finite-difference mode with the default step heuristic.
    pub fn finite_difference<F>(f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        SmoothFn {
            eval: Arc::new(f),
            mode: Mode::FiniteDifference { step: None },
            domain: (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// Finite-difference mode with a fixed step `h > 0`.
    pub fn finite_difference_with_step<F>(f: F, h: f64) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        assert!(h > 0.0, "finite-difference step must be positive, got {h}");
        SmoothFn {
            eval: Arc::new(f),
            mode: Mode::FiniteDifference { step: Some(h) },
            domain: (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    pub fn constant(c: f64) -> Self {
        SmoothFn::analytic(move |_| c, |_| 0.0, |_| 0.0, |_| 0.0)
    }

    /// Restricts the evaluation domain; derivative stencils must stay inside.
    pub fn with_domain(mut self, lo: f64, hi: f64) -> Self {
        self.domain = (lo, hi);
        self
    }

    pub fn domain(&self) -> (f64, f64) {
        self.domain
    }

    /// Drops any analytic callbacks, forcing finite differences.
    pub fn into_finite_difference(self, step: Option<f64>) -> Self {
        SmoothFn {
            eval: self.eval,
            mode: Mode::FiniteDifference { step },
            domain: self.domain,
        }
    }

    pub fn eval(&self, s: f64) -> f64 {
        (self.eval)(s)
    }

    /// Derivative of the requested order at `s`.
    ///
    /// Finite-difference mode uses central stencils: 2-point for order 1,
    /// 3-point for order 2, 5-point for order 3.
    pub fn deriv(&self, s: f64, order: DerivOrder) -> Result<f64, CalculusError> {
        match &self.mode {
            Mode::Analytic { d1, d2, d3 } => {
                self.check_domain(s, 0.0)?;
                Ok(match order {
                    DerivOrder::First => d1(s),
                    DerivOrder::Second => d2(s),
                    DerivOrder::Third => d3(s),
                })
            }
            Mode::FiniteDifference { step } => {
                let h = step.unwrap_or_else(|| default_step(order, s));
                let f = &self.eval;
                match order {
                    DerivOrder::First => {
                        self.check_domain(s, h)?;
                        Ok((f(s + h) - f(s - h)) / (2.0 * h))
                    }
                    DerivOrder::Second => {
                        self.check_domain(s, h)?;
                        Ok((f(s + h) - 2.0 * f(s) + f(s - h)) / (h * h))
                    }
                    DerivOrder::Third => {
                        self.check_domain(s, 2.0 * h)?;
                        Ok(
                            (f(s + 2.0 * h) - 2.0 * f(s + h) + 2.0 * f(s - h) - f(s - 2.0 * h))
                                / (2.0 * h * h * h),
                        )
                    }
                }
            }
        }
    }

    fn check_domain(&self, s: f64, half_width: f64) -> Result<(), CalculusError> {
        let (lo, hi) = self.domain;
        if s - half_width < lo || s + half_width > hi {
            return Err(CalculusError::DomainExceeded {
                s,
                half_width,
                lo,
                hi,
            });
        }
        Ok(())
    }
}

/// Vector function of arc length, componentwise in the algebra basis.
#[derive(Clone)]
pub struct SmoothVec3Fn {
    pub x: SmoothFn,
    pub y: SmoothFn,
    pub z: SmoothFn,
}

impl SmoothVec3Fn {
    pub fn new(x: SmoothFn, y: SmoothFn, z: SmoothFn) -> Self {
        SmoothVec3Fn { x, y, z }
    }

    /// Analytic mode from position and derivative closures returning triples.
    pub fn analytic<F, D1, D2, D3>(f: F, d1: D1, d2: D2, d3: D3) -> Self
    where
        F: Fn(f64) -> Vec3g + Send + Sync + Clone + 'static,
        D1: Fn(f64) -> Vec3g + Send + Sync + Clone + 'static,
        D2: Fn(f64) -> Vec3g + Send + Sync + Clone + 'static,
        D3: Fn(f64) -> Vec3g + Send + Sync + Clone + 'static,
    {
        let component = |i: usize| {
            let (f, d1, d2, d3) = (f.clone(), d1.clone(), d2.clone(), d3.clone());
            SmoothFn::analytic(
                move |s| f(s).get(i),
                move |s| d1(s).get(i),
                move |s| d2(s).get(i),
                move |s| d3(s).get(i),
            )
        };
        SmoothVec3Fn {
            x: component(0),
            y: component(1),
            z: component(2),
        }
    }

    /// Finite-difference mode from a position closure.
    pub fn finite_difference<F>(f: F, step: Option<f64>) -> Self
    where
        F: Fn(f64) -> Vec3g + Send + Sync + Clone + 'static,
    {
        let component = |i: usize| {
            let f = f.clone();
            let base = SmoothFn::finite_difference(move |s| f(s).get(i));
            match step {
                Some(h) => base.into_finite_difference(Some(h)),
                None => base,
            }
        };
        SmoothVec3Fn {
            x: component(0),
            y: component(1),
            z: component(2),
        }
    }

    /// Natural cubic spline through tabulated samples, finite-difference
    /// derivatives. Parameters must be strictly increasing.
    pub fn from_samples(params: &[f64], points: &[Vec3g], step: Option<f64>) -> Self {
        assert!(
            params.len() >= 3,
            "need at least 3 samples, got {}",
            params.len()
        );
        assert_eq!(params.len(), points.len());
        for w in params.windows(2) {
            assert!(w[1] > w[0], "sample parameters must be strictly increasing");
        }
        let component = |i: usize| {
            let values: Vec<f64> = points.iter().map(|p| p.get(i)).collect();
            let spline = CubicSpline::natural(params.to_vec(), values);
            let base = SmoothFn::finite_difference(move |s| spline.eval(s));
            match step {
                Some(h) => base.into_finite_difference(Some(h)),
                None => base,
            }
        };
        let lo = params[0];
        let hi = *params.last().unwrap();
        SmoothVec3Fn {
            x: component(0).with_domain(lo, hi),
            y: component(1).with_domain(lo, hi),
            z: component(2).with_domain(lo, hi),
        }
    }

    pub fn with_domain(self, lo: f64, hi: f64) -> Self {
        SmoothVec3Fn {
            x: self.x.with_domain(lo, hi),
            y: self.y.with_domain(lo, hi),
            z: self.z.with_domain(lo, hi),
        }
    }

    pub fn into_finite_difference(self, step: Option<f64>) -> Self {
        SmoothVec3Fn {
            x: self.x.into_finite_difference(step),
            y: self.y.into_finite_difference(step),
            z: self.z.into_finite_difference(step),
        }
    }

    pub fn eval(&self, s: f64) -> Vec3g {
        Vec3g::new(self.x.eval(s), self.y.eval(s), self.z.eval(s))
    }

    pub fn deriv(&self, s: f64, order: DerivOrder) -> Result<Vec3g, CalculusError> {
        Ok(Vec3g::new(
            self.x.deriv(s, order)?,
            self.y.deriv(s, order)?,
            self.z.deriv(s, order)?,
        ))
    }
}

/// Natural cubic spline on a strictly increasing knot grid.
struct CubicSpline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    /// Second derivatives at the knots.
    m: Vec<f64>,
}

impl CubicSpline {
    fn natural(xs: Vec<f64>, ys: Vec<f64>) -> Self {
        let n = xs.len();
        let mut m = vec![0.0; n];
        if n > 2 {
            // Tridiagonal system for interior second derivatives.
            let mut sub = vec![0.0; n];
            let mut diag = vec![0.0; n];
            let mut sup = vec![0.0; n];
            let mut rhs = vec![0.0; n];
            for i in 1..n - 1 {
                let h0 = xs[i] - xs[i - 1];
                let h1 = xs[i + 1] - xs[i];
                sub[i] = h0;
                diag[i] = 2.0 * (h0 + h1);
                sup[i] = h1;
                rhs[i] = 6.0 * ((ys[i + 1] - ys[i]) / h1 - (ys[i] - ys[i - 1]) / h0);
            }
            // Thomas algorithm on indices 1..n-1.
            for i in 2..n - 1 {
                let w = sub[i] / diag[i - 1];
                diag[i] -= w * sup[i - 1];
                rhs[i] -= w * rhs[i - 1];
            }
            for i in (1..n - 1).rev() {
                let upper = if i + 1 < n - 1 {
                    sup[i] * m[i + 1]
                } else {
                    0.0
                };
                m[i] = (rhs[i] - upper) / diag[i];
            }
        }
        CubicSpline { xs, ys, m }
    }

    fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        let i = match self.xs.binary_search_by(|k| k.partial_cmp(&x).unwrap()) {
            Ok(i) => i.min(n - 2),
            Err(0) => 0,
            Err(i) if i >= n => n - 2,
            Err(i) => i - 1,
        };
        let h = self.xs[i + 1] - self.xs[i];
        let a = (self.xs[i + 1] - x) / h;
        let b = (x - self.xs[i]) / h;
        a * self.ys[i]
            + b * self.ys[i + 1]
            + ((a * a * a - a) * self.m[i] + (b * b * b - b) * self.m[i + 1]) * h * h / 6.0
    }
}
