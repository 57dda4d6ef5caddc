//! Scenario configuration: a single TOML file describing the algebra, the
//! base curve, the surface, the evaluation grid, tolerances and output
//! paths. Every section has defaults; the reference schema is in the README.

use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use ruled_core::algebra::{LieAlgebra3, Vec3g};
use ruled_core::calculus::SmoothVec3Fn;
use ruled_core::frenet::Curve;
use ruled_core::surfaces::RuledSurfaceSpec;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default)]
    pub algebra: AlgebraConfig,
    #[serde(default)]
    pub curve: CurveConfig,
    #[serde(default)]
    pub derivatives: DerivativesConfig,
    #[serde(default)]
    pub surface: SurfaceConfig,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub outputs: OutputsConfig,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraConfig {
    /// One of `abelian`, `so3`, `so3-scaled-2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    /// Custom structure constants `c[i][j][k]` (3x3x3 nested arrays,
    /// 1-based indices in the docs, positional here): the coefficient of
    /// `X_k` in `[X_i, X_j]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constants: Option<Vec<Vec<Vec<f64>>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl Default for AlgebraConfig {
    fn default() -> Self {
        AlgebraConfig {
            builtin: Some("so3".to_string()),
            constants: None,
            name: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CurveConfig {
    /// `circle` or `helix`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builtin: Option<String>,
    /// Helix parameters, `a^2 + b^2 = 1`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    /// Tabulated unit-speed samples, interpolated by a natural cubic spline.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<CurveSamples>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<[f64; 2]>,
}

impl Default for CurveConfig {
    fn default() -> Self {
        CurveConfig {
            builtin: Some("circle".to_string()),
            a: None,
            b: None,
            samples: None,
            domain: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CurveSamples {
    pub s: Vec<f64>,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub z: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct DerivativesConfig {
    /// `analytic` (builtin curves only) or `fd`.
    #[serde(default = "default_mode")]
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub step: Option<f64>,
}

fn default_mode() -> String {
    "analytic".to_string()
}

impl Default for DerivativesConfig {
    fn default() -> Self {
        DerivativesConfig {
            mode: default_mode(),
            step: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SurfaceConfig {
    /// `general`, `tangent-developable`, `normal`, `binormal`,
    /// `darboux-developable`, `rectifying`.
    #[serde(default = "default_family")]
    pub family: String,
    /// Unit director coefficients; general family only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub director: Option<[f64; 3]>,
}

fn default_family() -> String {
    "general".to_string()
}

impl Default for SurfaceConfig {
    fn default() -> Self {
        SurfaceConfig {
            family: default_family(),
            director: Some([0.0, 0.0, 1.0]),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    /// `[min, max, count]` with count >= 1.
    #[serde(default = "default_s_grid")]
    pub s: (f64, f64, usize),
    #[serde(default = "default_v_grid")]
    pub v: (f64, f64, usize),
}

fn default_s_grid() -> (f64, f64, usize) {
    (0.0, std::f64::consts::TAU, 21)
}

fn default_v_grid() -> (f64, f64, usize) {
    (0.1, 2.0, 21)
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            s: default_s_grid(),
            v: default_v_grid(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Relative tolerance for dual-pipeline comparisons.
    #[serde(default = "default_compare_tol")]
    pub compare: f64,
    /// Classification tolerance (developability, point types, curve flags).
    #[serde(default = "default_classify_tol")]
    pub classify: f64,
    /// Structural validation tolerance for the algebra constants.
    #[serde(default = "default_validate_tol")]
    pub validate: f64,
}

fn default_compare_tol() -> f64 {
    1e-5
}
fn default_classify_tol() -> f64 {
    ruled_core::invariants::CLASSIFY_TOL
}
fn default_validate_tol() -> f64 {
    ruled_core::algebra::VALIDATE_TOL
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            compare: default_compare_tol(),
            classify: default_classify_tol(),
            validate: default_validate_tol(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct OutputsConfig {
    #[serde(default = "default_table")]
    pub table: String,
    #[serde(default = "default_summary")]
    pub summary: String,
    #[serde(default = "default_mesh")]
    pub mesh: String,
    #[serde(default = "default_echo")]
    pub config_echo: String,
}

fn default_table() -> String {
    "records.csv".to_string()
}
fn default_summary() -> String {
    "summary.json".to_string()
}
fn default_mesh() -> String {
    "mesh.obj".to_string()
}
fn default_echo() -> String {
    "scenario_echo.toml".to_string()
}

impl Default for OutputsConfig {
    fn default() -> Self {
        OutputsConfig {
            table: default_table(),
            summary: default_summary(),
            mesh: default_mesh(),
            config_echo: default_echo(),
        }
    }
}

impl ScenarioConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("cannot read config {}", path.display()))?;
        let config: ScenarioConfig =
            toml::from_str(&text).with_context(|| format!("cannot parse {}", path.display()))?;
        config.check()?;
        Ok(config)
    }

    pub fn echo_toml(&self) -> Result<String> {
        Ok(toml::to_string_pretty(self)?)
    }

    fn check(&self) -> Result<()> {
        if self.grid.s.2 < 1 || self.grid.v.2 < 1 {
            bail!(
                "grid counts must be >= 1, got s: {}, v: {}",
                self.grid.s.2,
                self.grid.v.2
            );
        }
        if self.algebra.builtin.is_some() && self.algebra.constants.is_some() {
            bail!("algebra: give either `builtin` or `constants`, not both");
        }
        if self.algebra.builtin.is_none() && self.algebra.constants.is_none() {
            bail!("algebra: one of `builtin` or `constants` is required");
        }
        let family = self.surface.family.as_str();
        if family != "general" && self.surface.director.is_some() {
            bail!("surface: `director` is only accepted for the general family (got family {family:?})");
        }
        if self.derivatives.mode == "analytic" && self.curve.samples.is_some() {
            bail!("derivatives: tabulated curves require mode = \"fd\"");
        }
        match self.derivatives.mode.as_str() {
            "analytic" | "fd" => {}
            other => bail!("derivatives: unknown mode {other:?} (use \"analytic\" or \"fd\")"),
        }
        Ok(())
    }

    /// The algebra, validated at the configured tolerance unless it is a
    /// builtin (those are exact).
    pub fn build_algebra(&self) -> Result<LieAlgebra3> {
        if let Some(name) = &self.algebra.builtin {
            return LieAlgebra3::builtin(name).map_err(|e| anyhow!("{e}"));
        }
        let c = self.algebra.constants.as_ref().expect("checked");
        let arr = constants_array(c)?;
        let name = self
            .algebra
            .name
            .clone()
            .unwrap_or_else(|| "custom".to_string());
        let alg = LieAlgebra3::new_unchecked(name, arr);
        let report = alg.validate(self.tolerances.validate);
        if !report.pass() {
            bail!("algebra constants fail validation: {report}");
        }
        Ok(alg)
    }

    /// The algebra without structural validation, for the `validate` command.
    pub fn build_algebra_unchecked(&self) -> Result<LieAlgebra3> {
        if let Some(name) = &self.algebra.builtin {
            return LieAlgebra3::builtin(name).map_err(|e| anyhow!("{e}"));
        }
        let c = self.algebra.constants.as_ref().expect("checked");
        let arr = constants_array(c)?;
        let name = self
            .algebra
            .name
            .clone()
            .unwrap_or_else(|| "custom".to_string());
        Ok(LieAlgebra3::new_unchecked(name, arr))
    }

    pub fn build_curve(&self) -> Result<Curve> {
        let mut curve = if let Some(samples) = &self.curve.samples {
            let n = samples.s.len();
            if samples.x.len() != n || samples.y.len() != n || samples.z.len() != n || n < 3 {
                bail!("curve samples need equal-length s/x/y/z arrays with at least 3 points");
            }
            let points: Vec<Vec3g> = (0..n)
                .map(|i| Vec3g::new(samples.x[i], samples.y[i], samples.z[i]))
                .collect();
            let position = SmoothVec3Fn::from_samples(&samples.s, &points, self.derivatives.step);
            let domain = self
                .curve
                .domain
                .unwrap_or([samples.s[0], *samples.s.last().unwrap()]);
            Curve::new(position, (domain[0], domain[1])).map_err(|e| anyhow!("{e}"))?
        } else {
            match self.curve.builtin.as_deref() {
                Some("circle") | None => Curve::circle(),
                Some("helix") => {
                    let a = self.curve.a.ok_or_else(|| anyhow!("helix needs `a`"))?;
                    let b = self.curve.b.ok_or_else(|| anyhow!("helix needs `b`"))?;
                    Curve::helix(a, b).map_err(|e| anyhow!("{e}"))?
                }
                Some(other) => bail!("unknown builtin curve {other:?} (use circle or helix)"),
            }
        };
        if self.derivatives.mode == "fd" && self.curve.samples.is_none() {
            curve = curve.into_finite_difference(self.derivatives.step);
        }
        Ok(curve)
    }

    pub fn build_surface(&self) -> Result<RuledSurfaceSpec> {
        let alg = self.build_algebra()?;
        let curve = self.build_curve()?;
        let spec = match self.surface.family.as_str() {
            "general" => {
                let d = self.surface.director.unwrap_or([0.0, 0.0, 1.0]);
                RuledSurfaceSpec::general(alg, curve, Vec3g::new(d[0], d[1], d[2]))
                    .map_err(|e| anyhow!("{e}"))?
            }
            "tangent-developable" => RuledSurfaceSpec::tangent_developable(alg, curve),
            "normal" => RuledSurfaceSpec::normal_surface(alg, curve),
            "binormal" => RuledSurfaceSpec::binormal_surface(alg, curve),
            "darboux-developable" => RuledSurfaceSpec::darboux_developable(alg, curve),
            "rectifying" => RuledSurfaceSpec::rectifying(alg, curve),
            other => bail!(
                "unknown surface family {other:?} (use one of: general, tangent-developable, \
                 normal, binormal, darboux-developable, rectifying)"
            ),
        };
        Ok(spec)
    }

    pub fn s_grid(&self) -> Vec<f64> {
        linspace(self.grid.s.0, self.grid.s.1, self.grid.s.2)
    }

    pub fn v_grid(&self) -> Vec<f64> {
        linspace(self.grid.v.0, self.grid.v.1, self.grid.v.2)
    }
}

pub fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

fn constants_array(c: &[Vec<Vec<f64>>]) -> Result<[[[f64; 3]; 3]; 3]> {
    let mut arr = [[[0.0; 3]; 3]; 3];
    if c.len() != 3 {
        bail!("structure constants must be a 3x3x3 nested array");
    }
    for (i, plane) in c.iter().enumerate() {
        if plane.len() != 3 {
            bail!("structure constants must be a 3x3x3 nested array");
        }
        for (j, row) in plane.iter().enumerate() {
            if row.len() != 3 {
                bail!("structure constants must be a 3x3x3 nested array");
            }
            for (k, &value) in row.iter().enumerate() {
                if !value.is_finite() {
                    bail!(
                        "structure constant c[{}][{}][{}] is not finite",
                        i + 1,
                        j + 1,
                        k + 1
                    );
                }
                arr[i][j][k] = value;
            }
        }
    }
    Ok(arr)
}
