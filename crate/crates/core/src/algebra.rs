//! Three-dimensional Lie algebras with bi-invariant inner product.
//!
//! The algebra is described by structure constants over a fixed orthonormal
//! oriented basis `{X1, X2, X3}`: `[Xi, Xj] = sum_k c[i][j][k] Xk`. The metric
//! is the identity on that basis, so `<[Xi, Xj], Xk> = c[i][j][k]` and
//! bi-invariance (`<X, [Y, Z]> = <[X, Y], Z>`) is exactly total antisymmetry
//! of the constant array.
//!
//! The oriented cross product on coefficient triples is kept separate from
//! the bracket: the two coincide only for `so(3)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

/// Default tolerance for structural validation of user-supplied constants.
pub const VALIDATE_TOL: f64 = 1e-10;

/// Element of the algebra as coefficients in the orthonormal basis.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3g {
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
}

impl Vec3g {
    pub const ZERO: Vec3g = Vec3g {
        c1: 0.0,
        c2: 0.0,
        c3: 0.0,
    };

    pub fn new(c1: f64, c2: f64, c3: f64) -> Self {
        Vec3g { c1, c2, c3 }
    }

    pub fn from_array(a: [f64; 3]) -> Self {
        Vec3g::new(a[0], a[1], a[2])
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.c1, self.c2, self.c3]
    }

    /// Coefficient by 0-based index.
    pub fn get(self, i: usize) -> f64 {
        match i {
            0 => self.c1,
            1 => self.c2,
            2 => self.c3,
            _ => panic!("Vec3g index out of range: {i}"),
        }
    }

    pub fn dot(self, other: Vec3g) -> f64 {
        self.c1 * other.c1 + self.c2 * other.c2 + self.c3 * other.c3
    }

    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    pub fn cross(self, other: Vec3g) -> Vec3g {
        cross(self, other)
    }

    /// Unit vector in the same direction, or `None` below `tol`.
    pub fn normalized(self, tol: f64) -> Option<Vec3g> {
        let n = self.norm();
        if n <= tol {
            None
        } else {
            Some(self * (1.0 / n))
        }
    }

    pub fn is_finite(self) -> bool {
        self.c1.is_finite() && self.c2.is_finite() && self.c3.is_finite()
    }
}

impl Add for Vec3g {
    type Output = Vec3g;
    fn add(self, rhs: Vec3g) -> Vec3g {
        Vec3g::new(self.c1 + rhs.c1, self.c2 + rhs.c2, self.c3 + rhs.c3)
    }
}

impl Sub for Vec3g {
    type Output = Vec3g;
    fn sub(self, rhs: Vec3g) -> Vec3g {
        Vec3g::new(self.c1 - rhs.c1, self.c2 - rhs.c2, self.c3 - rhs.c3)
    }
}

impl Neg for Vec3g {
    type Output = Vec3g;
    fn neg(self) -> Vec3g {
        Vec3g::new(-self.c1, -self.c2, -self.c3)
    }
}

impl Mul<f64> for Vec3g {
    type Output = Vec3g;
    fn mul(self, k: f64) -> Vec3g {
        Vec3g::new(self.c1 * k, self.c2 * k, self.c3 * k)
    }
}

impl Mul<Vec3g> for f64 {
    type Output = Vec3g;
    fn mul(self, v: Vec3g) -> Vec3g {
        v * self
    }
}

impl fmt::Display for Vec3g {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.c1, self.c2, self.c3)
    }
}

/// Right-handed cross product of coefficient triples.
///
/// This is the oriented metric cross product of the basis, independent of the
/// bracket; `cross(x, y)` is orthogonal to both arguments.
pub fn cross(x: Vec3g, y: Vec3g) -> Vec3g {
    Vec3g::new(
        x.c2 * y.c3 - x.c3 * y.c2,
        x.c3 * y.c1 - x.c1 * y.c3,
        x.c1 * y.c2 - x.c2 * y.c1,
    )
}

/// Determinant of the 3x3 matrix with rows `x`, `y`, `z`.
///
/// Expanded by cofactors so that it stays an independent route from
/// `cross(x, y).dot(z)`; the two are compared in tests.
pub fn det3(x: Vec3g, y: Vec3g, z: Vec3g) -> f64 {
    x.c1 * (y.c2 * z.c3 - y.c3 * z.c2) - x.c2 * (y.c1 * z.c3 - y.c3 * z.c1)
        + x.c3 * (y.c1 * z.c2 - y.c2 * z.c1)
}

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("unknown builtin algebra {name:?}; available: {available}")]
    UnknownBuiltin { name: String, available: String },
    #[error("structure constants for {name:?} fail validation: {report}")]
    InvalidConstants {
        name: String,
        report: ValidationReport,
    },
}

/// Outcome of structural validation; a failing report is a value, not an error.
#[derive(Debug, Clone, Copy)]
pub struct ValidationReport {
    /// Max violation of `c[i][j][k] = -c[j][i][k]`.
    pub antisymmetry: f64,
    /// Max violation of the Jacobi identity on basis triples.
    pub jacobi: f64,
    /// Max violation of total antisymmetry (`c[i][j][k] = -c[i][k][j]`),
    /// which encodes bi-invariance of the metric.
    pub bi_invariance: f64,
    /// Tolerance the report was evaluated at.
    pub tol: f64,
}

impl ValidationReport {
    pub fn pass(&self) -> bool {
        self.antisymmetry <= self.tol && self.jacobi <= self.tol && self.bi_invariance <= self.tol
    }

    pub fn max_violation(&self) -> f64 {
        self.antisymmetry.max(self.jacobi).max(self.bi_invariance)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "antisymmetry {:.3e}, jacobi {:.3e}, bi-invariance {:.3e} (tol {:.1e}, {})",
            self.antisymmetry,
            self.jacobi,
            self.bi_invariance,
            self.tol,
            if self.pass() { "pass" } else { "fail" }
        )
    }
}

/// Names accepted by [`LieAlgebra3::builtin`].
pub const BUILTIN_ALGEBRAS: [&str; 3] = ["abelian", "so3", "so3-scaled-2"];

/// A 3D Lie algebra given by structure constants `[Xi, Xj] = sum_k c[i][j][k] Xk`.
#[derive(Debug, Clone)]
pub struct LieAlgebra3 {
    name: String,
    c: [[[f64; 3]; 3]; 3],
}

impl LieAlgebra3 {
    /// Builds and validates an algebra at the default tolerance.
    pub fn new(name: impl Into<String>, c: [[[f64; 3]; 3]; 3]) -> Result<Self, AlgebraError> {
        let alg = LieAlgebra3 {
            name: name.into(),
            c,
        };
        let report = alg.validate(VALIDATE_TOL);
        if report.pass() {
            Ok(alg)
        } else {
            Err(AlgebraError::InvalidConstants {
                name: alg.name,
                report,
            })
        }
    }

    /// Builds without validation. Used to inspect deliberately bad constants.
    pub fn new_unchecked(name: impl Into<String>, c: [[[f64; 3]; 3]; 3]) -> Self {
        LieAlgebra3 {
            name: name.into(),
            c,
        }
    }

    /// Catalog of ready algebras: `abelian` (zero constants), `so3`
    /// (`c[i][j][k]` the Levi-Civita symbol, bracket = cross product) and
    /// `so3-scaled-2` (twice the Levi-Civita symbol).
    pub fn builtin(name: &str) -> Result<Self, AlgebraError> {
        match name {
            "abelian" => Ok(LieAlgebra3 {
                name: "abelian".to_string(),
                c: [[[0.0; 3]; 3]; 3],
            }),
            "so3" => Ok(LieAlgebra3 {
                name: "so3".to_string(),
                c: levi_civita_scaled(1.0),
            }),
            "so3-scaled-2" => Ok(LieAlgebra3 {
                name: "so3-scaled-2".to_string(),
                c: levi_civita_scaled(2.0),
            }),
            other => Err(AlgebraError::UnknownBuiltin {
                name: other.to_string(),
                available: BUILTIN_ALGEBRAS.join(", "),
            }),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Structure constant `c[i][j][k]`, 0-based indices.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> f64 {
        self.c[i][j][k]
    }

    pub fn constants(&self) -> &[[[f64; 3]; 3]; 3] {
        &self.c
    }

    /// Lie bracket `[x, y] = sum_{i,j} x_i y_j [Xi, Xj]`.
    pub fn bracket(&self, x: Vec3g, y: Vec3g) -> Vec3g {
        let xa = x.to_array();
        let ya = y.to_array();
        let mut out = [0.0; 3];
        for i in 0..3 {
            if xa[i] == 0.0 {
                continue;
            }
            for j in 0..3 {
                if ya[j] == 0.0 {
                    continue;
                }
                let w = xa[i] * ya[j];
                for k in 0..3 {
                    out[k] += w * self.c[i][j][k];
                }
            }
        }
        Vec3g::from_array(out)
    }

    /// Checks antisymmetry, the Jacobi identity, and total antisymmetry of
    /// the constants (bi-invariance of the metric).
    pub fn validate(&self, tol: f64) -> ValidationReport {
        let mut antisymmetry: f64 = 0.0;
        let mut bi_invariance: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    antisymmetry = antisymmetry.max((self.c[i][j][k] + self.c[j][i][k]).abs());
                    bi_invariance = bi_invariance.max((self.c[i][j][k] + self.c[i][k][j]).abs());
                }
            }
        }
        // [Xi,[Xj,Xk]] + [Xk,[Xi,Xj]] + [Xj,[Xk,Xi]] = 0, coefficient of Xl.
        let mut jacobi: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    for l in 0..3 {
                        let mut sum = 0.0;
                        for m in 0..3 {
                            sum += self.c[j][k][m] * self.c[i][m][l]
                                + self.c[i][j][m] * self.c[k][m][l]
                                + self.c[k][i][m] * self.c[j][m][l];
                        }
                        jacobi = jacobi.max(sum.abs());
                    }
                }
            }
        }
        ValidationReport {
            antisymmetry,
            jacobi,
            bi_invariance,
            tol,
        }
    }
}

fn levi_civita_scaled(scale: f64) -> [[[f64; 3]; 3]; 3] {
    let mut c = [[[0.0; 3]; 3]; 3];
    c[0][1][2] = scale;
    c[1][2][0] = scale;
    c[2][0][1] = scale;
    c[1][0][2] = -scale;
    c[2][1][0] = -scale;
    c[0][2][1] = -scale;
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn e1() -> Vec3g {
        Vec3g::new(1.0, 0.0, 0.0)
    }
    fn e2() -> Vec3g {
        Vec3g::new(0.0, 1.0, 0.0)
    }
    fn e3() -> Vec3g {
        Vec3g::new(0.0, 0.0, 1.0)
    }

    #[test]
    fn so3_bracket_of_basis_is_cross() {
        let so3 = LieAlgebra3::builtin("so3").unwrap();
        let b = so3.bracket(e1(), e2());
        assert_eq!(b.to_array(), [0.0, 0.0, 1.0]);
    }

    #[test]
    fn abelian_bracket_vanishes() {
        let ab = LieAlgebra3::builtin("abelian").unwrap();
        let b = ab.bracket(Vec3g::new(1.3, -0.2, 4.0), Vec3g::new(0.5, 2.0, -1.0));
        assert_eq!(b.to_array(), [0.0, 0.0, 0.0]);
    }

    #[test]
    fn bracket_of_vector_with_itself_vanishes() {
        let so3 = LieAlgebra3::builtin("so3").unwrap();
        let x = Vec3g::new(0.3, -1.1, 2.2);
        let b = so3.bracket(x, x);
        assert!(b.norm() <= 1e-15, "[x,x] = {b}");
    }

    #[test]
    fn cross_examples() {
        assert_eq!(cross(e1(), e2()).to_array(), [0.0, 0.0, 1.0]);
        assert_eq!(cross(e2(), e3()).to_array(), [1.0, 0.0, 0.0]);
        let x = Vec3g::new(0.4, 1.0, -2.0);
        assert_eq!(cross(x, x).to_array(), [0.0, 0.0, 0.0]);
    }

    #[test]
    fn det3_identity_and_repeated_row() {
        assert_eq!(det3(e1(), e2(), e3()), 1.0);
        let x = Vec3g::new(1.0, 2.0, 3.0);
        let z = Vec3g::new(-1.0, 0.5, 2.0);
        assert_eq!(det3(x, x, z), 0.0);
    }

    #[test]
    fn det3_cylinder_triple_is_one_for_all_t() {
        // Hand expansion of det((-sin t, cos t, 0), (0,0,1), (cos t, sin t, 0)):
        // -sin t * (0 - sin t) - cos t * (0 - cos t) + 0 = sin^2 + cos^2 = 1.
        for k in 0..32 {
            let t = (k as f64) * 0.41 - 5.0;
            let row1 = Vec3g::new(-t.sin(), t.cos(), 0.0);
            let row2 = Vec3g::new(0.0, 0.0, 1.0);
            let row3 = Vec3g::new(t.cos(), t.sin(), 0.0);
            assert!((det3(row1, row2, row3) - 1.0).abs() <= 1e-15);
        }
    }

    #[test]
    fn builtins_validate_exactly() {
        for name in BUILTIN_ALGEBRAS {
            let alg = LieAlgebra3::builtin(name).unwrap();
            let report = alg.validate(VALIDATE_TOL);
            assert!(report.pass(), "{name}: {report}");
            assert_eq!(report.max_violation(), 0.0, "{name}");
        }
    }

    #[test]
    fn unknown_builtin_lists_catalog() {
        let err = LieAlgebra3::builtin("su2").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("su2") && msg.contains("so3-scaled-2"), "{msg}");
    }

    #[test]
    fn antisymmetric_but_not_bi_invariant_constants_fail() {
        // c[0][1][0] = 1 with only plain antisymmetry imposed: the Jacobi
        // identity holds but total antisymmetry (bi-invariance) is violated.
        let mut c = [[[0.0; 3]; 3]; 3];
        c[0][1][0] = 1.0;
        c[1][0][0] = -1.0;
        let alg = LieAlgebra3::new_unchecked("bad", c);
        let report = alg.validate(1e-10);
        assert_eq!(report.antisymmetry, 0.0);
        assert_eq!(report.jacobi, 0.0);
        assert!(report.bi_invariance >= 1.0 - 1e-15);
        assert!(!report.pass());
        assert!(LieAlgebra3::new("bad", c).is_err());
    }

    fn arb_vec3() -> impl Strategy<Value = Vec3g> {
        (-10.0f64..10.0, -10.0f64..10.0, -10.0f64..10.0).prop_map(|(a, b, c)| Vec3g::new(a, b, c))
    }

    proptest! {
        #[test]
        fn bi_invariance_cycles(x in arb_vec3(), y in arb_vec3(), z in arb_vec3()) {
            for name in BUILTIN_ALGEBRAS {
                let alg = LieAlgebra3::builtin(name).unwrap();
                let lhs = alg.bracket(x, y).dot(z);
                let rhs = x.dot(alg.bracket(y, z));
                prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));
            }
        }

        #[test]
        fn bracket_antisymmetry(x in arb_vec3(), y in arb_vec3()) {
            for name in BUILTIN_ALGEBRAS {
                let alg = LieAlgebra3::builtin(name).unwrap();
                let d = alg.bracket(x, y) + alg.bracket(y, x);
                prop_assert!(d.norm() <= 1e-15 * (1.0 + x.norm() * y.norm()));
            }
        }

        #[test]
        fn so3_bracket_matches_cross(x in arb_vec3(), y in arb_vec3()) {
            let so3 = LieAlgebra3::builtin("so3").unwrap();
            let d = so3.bracket(x, y) - cross(x, y);
            prop_assert!(d.norm() <= 1e-15 * (1.0 + x.norm() * y.norm()));
        }

        #[test]
        fn det3_matches_scalar_triple(x in arb_vec3(), y in arb_vec3(), z in arb_vec3()) {
            let lhs = det3(x, y, z);
            let rhs = cross(x, y).dot(z);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));
        }
    }
}
