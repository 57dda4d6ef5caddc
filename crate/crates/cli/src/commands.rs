//! Subcommand implementations. Every command returns `Ok(true)` for exit 0,
//! `Ok(false)` for an assertion/classification failure (exit 1); config and
//! usage problems surface as errors (exit 2).

use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use rayon::prelude::*;

use ruled_core::algebra::Vec3g;
use ruled_core::frenet::{frenet_at, FrameField};
use ruled_core::invariants::{
    classify, cylinder_compat_record, distribution_parameter, evaluate_record, Classification,
    DistributionParameter, InvariantRecord, Pipeline, COMPAT_NOTE, K_SIGN_NOTE,
};
use ruled_core::report::{fmt_f64, JsonObject};
use ruled_core::surfaces::cylinder;
use ruled_core::verify::{compare_pipelines, frenet_residuals, property_suite, tau_g_alt_check};

use crate::config::ScenarioConfig;

pub struct Options {
    pub out: PathBuf,
    pub jobs: Option<usize>,
    pub tol: Option<f64>,
    pub seed: u64,
    pub paper_compat: bool,
}

impl Options {
    fn path(&self, name: &str) -> PathBuf {
        self.out.join(name)
    }

    fn write(&self, name: &str, contents: &str) -> Result<PathBuf> {
        let path = self.path(name);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)
                .with_context(|| format!("cannot create {}", parent.display()))?;
        }
        fs::write(&path, contents).with_context(|| format!("cannot write {}", path.display()))?;
        Ok(path)
    }

    fn install_pool<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T> {
        match self.jobs {
            Some(jobs) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(jobs.max(1))
                    .build()
                    .context("cannot build worker pool")?;
                Ok(pool.install(f))
            }
            None => Ok(f()),
        }
    }
}

/// `validate`: structural checks of the algebra constants.
pub fn cmd_validate(config: &ScenarioConfig, opts: &Options) -> Result<bool> {
    let alg = config.build_algebra_unchecked()?;
    let tol = opts.tol.unwrap_or(config.tolerances.validate);
    let report = alg.validate(tol);
    println!("algebra {}: {report}", alg.name());
    if !report.pass() {
        if report.antisymmetry > tol {
            println!(
                "  violated: antisymmetry c[i][j][k] = -c[j][i][k] (max {})",
                fmt_f64(report.antisymmetry)
            );
        }
        if report.jacobi > tol {
            println!(
                "  violated: Jacobi identity (max {})",
                fmt_f64(report.jacobi)
            );
        }
        if report.bi_invariance > tol {
            println!(
                "  violated: bi-invariance / total antisymmetry c[i][j][k] = -c[i][k][j] (max {})",
                fmt_f64(report.bi_invariance)
            );
        }
    }
    Ok(report.pass())
}

/// `frenet`: frame, curvature, torsion and group torsion over the s-grid.
pub fn cmd_frenet(config: &ScenarioConfig, opts: &Options) -> Result<bool> {
    let alg = config.build_algebra()?;
    let curve = config.build_curve()?;
    let grid = config.s_grid();
    let field = FrameField::build(&alg, &curve, &grid).map_err(|e| anyhow::anyhow!("{e}"))?;
    let mut out = String::from("s,t1,t2,t3,n1,n2,n3,b1,b2,b3,kappa,tau,tau_g\n");
    for d in &field.samples {
        let row: Vec<String> = [
            d.s,
            d.tangent.c1,
            d.tangent.c2,
            d.tangent.c3,
            d.normal.c1,
            d.normal.c2,
            d.normal.c3,
            d.binormal.c1,
            d.binormal.c2,
            d.binormal.c3,
            d.kappa,
            d.tau,
            d.tau_g,
        ]
        .iter()
        .map(|&x| fmt_f64(x))
        .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    let path = opts.write("frenet.csv", &out)?;
    println!(
        "frenet frames: {} samples -> {}",
        field.samples.len(),
        path.display()
    );
    Ok(true)
}

const TABLE_HEADER: &str = "s,v,E,F,G,e,f,g,K,H,lambda,kappa_g,kappa_n,tau_g,point_type,pipeline\n";

fn record_row(record: &InvariantRecord, tol: f64) -> String {
    let lambda = match record.lambda {
        DistributionParameter::Finite(l) => fmt_f64(l),
        DistributionParameter::Degenerate => "degenerate".to_string(),
    };
    let forms = record.forms.as_ref();
    let fm = |x: Option<f64>| x.map(fmt_f64).unwrap_or_default();
    let point_type = ruled_core::invariants::PointType::from_gauss(record.gauss, tol);
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
        fmt_f64(record.s),
        fmt_f64(record.v),
        fm(forms.map(|f| f.E)),
        fm(forms.map(|f| f.F)),
        fm(forms.map(|f| f.G)),
        fm(forms.map(|f| f.e)),
        fm(forms.map(|f| f.f)),
        fm(forms.map(|f| f.g)),
        fmt_f64(record.gauss),
        fmt_f64(record.mean),
        lambda,
        fmt_f64(record.kappa_g),
        fmt_f64(record.kappa_n),
        fmt_f64(record.tau_g),
        point_type.as_str(),
        record.pipeline.as_str()
    )
}

fn singular_row(s: f64, v: f64, pipeline: Pipeline) -> String {
    let nan = "nan";
    format!(
        "{},{},{nan},{nan},{nan},{nan},{nan},{nan},{nan},{nan},{nan},{nan},{nan},{nan},singular,{}\n",
        fmt_f64(s),
        fmt_f64(v),
        pipeline.as_str()
    )
}

fn classification_json(c: &Classification) -> String {
    JsonObject::new()
        .field_bool("developable", c.developable)
        .field_bool("degenerate_ruling", c.degenerate_ruling)
        .field_f64("max_abs_lambda", c.max_abs_lambda)
        .field_str("minimal_locus", &c.minimal_locus)
        .field_u64("hyperbolic_cells", c.point_counts.hyperbolic as u64)
        .field_u64("parabolic_cells", c.point_counts.parabolic as u64)
        .field_u64("elliptic_cells", c.point_counts.elliptic as u64)
        .field_u64("singular_cells", c.point_counts.singular as u64)
        .field_str(
            "uniform_point_type",
            c.uniform_point_type.map(|p| p.as_str()).unwrap_or("mixed"),
        )
        .field_bool("base_curve_geodesic", c.base_curve.geodesic)
        .field_bool("base_curve_asymptotic", c.base_curve.asymptotic)
        .field_bool("base_curve_principal", c.base_curve.principal)
        .field_f64("base_curve_max_kappa_g", c.base_curve.max_kappa_g)
        .field_f64("base_curve_max_kappa_n", c.base_curve.max_kappa_n)
        .field_f64("base_curve_max_tau_g", c.base_curve.max_tau_g)
        .field_f64("base_curve_v_ref", c.base_curve.v_ref)
        .field_f64("tol", c.tol)
        .field_str("k_sign_note", c.k_sign_note)
        .render()
}

/// `surface-report`: per-cell invariant table (both pipelines), grid
/// classification, dual-pipeline comparison, and a config echo.
pub fn cmd_surface_report(config: &ScenarioConfig, opts: &Options) -> Result<bool> {
    let spec = config.build_surface()?;
    let s_grid = config.s_grid();
    let v_grid = config.v_grid();
    let classify_tol = config.tolerances.classify;
    let compare_tol = opts.tol.unwrap_or(config.tolerances.compare);

    let cells: Vec<(f64, f64)> = s_grid
        .iter()
        .flat_map(|&s| v_grid.iter().map(move |&v| (s, v)))
        .collect();
    let spec_ref = &spec;
    let rows: Vec<String> = opts.install_pool(|| {
        cells
            .par_iter()
            .map(|&(s, v)| {
                let mut out = String::new();
                for pipeline in [Pipeline::Definitional, Pipeline::ClosedForm] {
                    match evaluate_record(spec_ref, s, v, pipeline) {
                        Ok(record) => out.push_str(&record_row(&record, classify_tol)),
                        Err(_) => out.push_str(&singular_row(s, v, pipeline)),
                    }
                }
                out
            })
            .collect()
    })?;
    let mut table = String::from(TABLE_HEADER);
    for row in rows {
        table.push_str(&row);
    }
    let table_path = opts.write(&config.outputs.table, &table)?;

    let classification =
        classify(&spec, &s_grid, &v_grid, classify_tol).map_err(|e| anyhow::anyhow!("{e}"))?;
    let comparisons = compare_pipelines(&spec, &s_grid, &v_grid, compare_tol);
    let summary = JsonObject::new()
        .field_str("family", spec.family().as_str())
        .field_str("algebra", spec.algebra().name())
        .field_array(
            "grid",
            vec![s_grid.len().to_string(), v_grid.len().to_string()],
        )
        .field_raw("classification", classification_json(&classification))
        .field_array(
            "comparisons",
            comparisons.iter().map(|r| r.to_json()).collect(),
        )
        .render();
    let summary_path = opts.write(&config.outputs.summary, &summary)?;
    let echo_path = opts.write(&config.outputs.config_echo, &config.echo_toml()?)?;

    let lambda_desc = if classification.degenerate_ruling {
        "degenerate (cylindrical ruling)".to_string()
    } else {
        format!("max |lambda| = {}", fmt_f64(classification.max_abs_lambda))
    };
    println!(
        "surface {} over {}x{} grid: developable = {}, {}",
        spec.family().as_str(),
        s_grid.len(),
        v_grid.len(),
        classification.developable,
        lambda_desc
    );
    println!("  table:   {}", table_path.display());
    println!("  summary: {}", summary_path.display());
    println!("  echo:    {}", echo_path.display());
    Ok(true)
}

/// `classify`: grid classification only.
pub fn cmd_classify(config: &ScenarioConfig, opts: &Options) -> Result<bool> {
    let spec = config.build_surface()?;
    let tol = opts.tol.unwrap_or(config.tolerances.classify);
    let c = classify(&spec, &config.s_grid(), &config.v_grid(), tol)
        .map_err(|e| anyhow::anyhow!("{e}"))?;
    println!("family:        {}", spec.family().as_str());
    println!(
        "developable:   {}{}",
        c.developable,
        if c.degenerate_ruling {
            " (degenerate ruling)"
        } else {
            ""
        }
    );
    println!("max |lambda|:  {}", fmt_f64(c.max_abs_lambda));
    println!(
        "point types:   hyperbolic {}, parabolic {}, elliptic {}, singular {}",
        c.point_counts.hyperbolic,
        c.point_counts.parabolic,
        c.point_counts.elliptic,
        c.point_counts.singular
    );
    println!("minimal locus: {}", c.minimal_locus);
    println!(
        "base curve:    geodesic {}, asymptotic {}, principal {} (at v = {})",
        c.base_curve.geodesic,
        c.base_curve.asymptotic,
        c.base_curve.principal,
        fmt_f64(c.base_curve.v_ref)
    );
    let summary = classification_json(&c);
    let path = opts.write(&config.outputs.summary, &summary)?;
    println!("summary: {}", path.display());
    Ok(true)
}

/// `mesh`: chart-coordinate quad mesh of the surface over the grid.
pub fn cmd_mesh(config: &ScenarioConfig, opts: &Options) -> Result<bool> {
    let spec = config.build_surface()?;
    let s_grid = config.s_grid();
    let v_grid = config.v_grid();
    let spec_ref = &spec;
    let vertices: Vec<Vec3g> = opts.install_pool(|| {
        s_grid
            .par_iter()
            .flat_map_iter(|&s| {
                v_grid.iter().map(move |&v| {
                    spec_ref
                        .evaluate(s, v)
                        .unwrap_or(Vec3g::new(f64::NAN, f64::NAN, f64::NAN))
                })
            })
            .collect()
    })?;
    let (ns, nv) = (s_grid.len(), v_grid.len());
    let mut out = String::new();
    out.push_str(&format!(
        "# ruled surface mesh: family {}, {}x{} grid\n",
        spec.family().as_str(),
        ns,
        nv
    ));
    for p in &vertices {
        out.push_str(&format!(
            "v {} {} {}\n",
            fmt_f64(p.c1),
            fmt_f64(p.c2),
            fmt_f64(p.c3)
        ));
    }
    // Quad faces, row-major over (s index, v index), 1-based indices.
    for si in 0..ns.saturating_sub(1) {
        for vi in 0..nv.saturating_sub(1) {
            let idx = |si: usize, vi: usize| si * nv + vi + 1;
            out.push_str(&format!(
                "f {} {} {} {}\n",
                idx(si, vi),
                idx(si + 1, vi),
                idx(si + 1, vi + 1),
                idx(si, vi + 1)
            ));
        }
    }
    let path = opts.write(&config.outputs.mesh, &out)?;
    let faces = ns.saturating_sub(1) * nv.saturating_sub(1);
    println!(
        "mesh: {} vertices, {} quads -> {}",
        vertices.len(),
        faces,
        path.display()
    );
    Ok(true)
}

/// `verify`: structural validation, frame-equation residuals, dual-pipeline
/// comparison, group-torsion cross-check, and the seeded property suite.
/// Exit 0 only if every asserting check passes.
pub fn cmd_verify(config: &ScenarioConfig, opts: &Options) -> Result<bool> {
    let mut all_pass = true;
    let mut lines: Vec<String> = Vec::new();
    let check = |name: &str, pass: bool, detail: String| -> bool {
        println!("{} {name}: {detail}", if pass { "ok  " } else { "FAIL" });
        pass
    };

    let alg = config.build_algebra_unchecked()?;
    let validation = alg.validate(config.tolerances.validate);
    all_pass &= check(
        "algebra-validation",
        validation.pass(),
        validation.to_string(),
    );

    let curve = config.build_curve()?;
    let s_grid = config.s_grid();
    let mut max_frame: f64 = 0.0;
    let mut max_bracket: f64 = 0.0;
    for &s in &s_grid {
        let r = frenet_residuals(&alg, &curve, s).map_err(|e| anyhow::anyhow!("{e}"))?;
        max_frame = max_frame.max(r.max_frame());
        max_bracket = max_bracket.max(r.max_bracket());
    }
    all_pass &= check(
        "frame-equation-residuals",
        max_frame <= 1e-4 && max_bracket <= 1e-6,
        format!(
            "frame {} (tol 1e-4), bracket {} (tol 1e-6)",
            fmt_f64(max_frame),
            fmt_f64(max_bracket)
        ),
    );

    let spec = config.build_surface()?;
    let compare_tol = opts.tol.unwrap_or(config.tolerances.compare);
    let comparisons = compare_pipelines(&spec, &s_grid, &config.v_grid(), compare_tol);
    for r in &comparisons {
        lines.push(r.to_json());
        if r.asserting {
            all_pass &= check(
                &format!("pipelines-{}-{}", r.family, r.quantity),
                r.pass,
                format!(
                    "max rel dev {} (tol {})",
                    fmt_f64(r.max_rel_dev),
                    fmt_f64(r.tolerance)
                ),
            );
        } else {
            println!(
                "note pipelines-{}-{}: report-only, max rel dev {}",
                r.family,
                r.quantity,
                fmt_f64(r.max_rel_dev)
            );
        }
    }

    let mut alt_reports = Vec::new();
    let mut alt_worst: f64 = 0.0;
    let mut alt_skipped = 0usize;
    for &s in &s_grid {
        let report = tau_g_alt_check(&alg, &curve, s).map_err(|e| anyhow::anyhow!("{e}"))?;
        if report.skipped.is_some() {
            alt_skipped += 1;
        } else {
            alt_worst = alt_worst.max(report.balanced_residual);
        }
        alt_reports.push(report.to_json());
    }
    let alt_ran = alt_reports.len() - alt_skipped;
    if alt_ran > 0 {
        all_pass &= check(
            "group-torsion-derivative-form",
            alt_worst <= 1e-4,
            format!(
                "max residual {} over {alt_ran} points ({alt_skipped} skipped)",
                fmt_f64(alt_worst)
            ),
        );
    } else {
        println!(
            "note group-torsion-derivative-form: skipped at all {alt_skipped} points (tau = 0)"
        );
    }

    let suite = property_suite(opts.seed, 100);
    for c in &suite.checks {
        all_pass &= check(
            &format!("property-{}", c.name),
            c.pass,
            format!(
                "max violation {} (tol {})",
                fmt_f64(c.max_violation),
                fmt_f64(c.tol)
            ),
        );
    }

    let report = JsonObject::new()
        .field_u64("seed", opts.seed)
        .field_bool("pass", all_pass)
        .field_f64("compare_tolerance", compare_tol)
        .field_array("comparisons", lines)
        .field_array("tau_g_alt", alt_reports)
        .field_raw("property_suite", suite.to_json())
        .render();
    let path = opts.write("verify_report.json", &report)?;
    println!("verify report: {}", path.display());
    Ok(all_pass)
}

/// `example-cylinder`: the worked cylinder scenario, printed in full.
pub fn cmd_example_cylinder(opts: &Options) -> Result<bool> {
    let alg = ruled_core::algebra::LieAlgebra3::builtin("so3").unwrap();
    let spec = cylinder(alg.clone());
    let curve = ruled_core::frenet::Curve::circle();
    let x = Vec3g::new(0.0, 0.0, 1.0);

    println!("cylinder: phi(t, v) = (cos t, sin t, 0) + v (0, 0, 1) in so3");
    let d = frenet_at(&alg, &curve, 0.0).map_err(|e| anyhow::anyhow!("{e}"))?;
    println!("frame data (constant in t):");
    println!("  kappa = {}", fmt_f64(d.kappa));
    println!("  tau   = {}", fmt_f64(d.tau));
    println!("  tau_G = {}", fmt_f64(d.tau_g));

    let t0 = d.tangent;
    let tx = alg.bracket(t0, x);
    println!("bracket table at t = 0 (computed):");
    println!("  [T, X] = T x X     = {tx}");
    println!("  [T, [T, X]]        = {}", alg.bracket(t0, tx));
    println!("  [N, X]             = {}", alg.bracket(d.normal, x));
    println!(
        "  [T, X] x X         = {}",
        ruled_core::algebra::cross(tx, x)
    );
    println!("  ([T, [T, X]] equals -X; reference tables print the opposite sign)");

    let lambda = distribution_parameter(&spec, 0.0)
        .map_err(|e| anyhow::anyhow!("{e}"))?
        .finite()
        .expect("regular ruling");
    println!("distribution parameter: lambda = {}", fmt_f64(lambda));

    let record = evaluate_record(&spec, 0.0, 0.0, Pipeline::Definitional)
        .map_err(|e| anyhow::anyhow!("{e}"))?;
    println!("definitional invariants at v = 0:");
    println!("  K       = {}", fmt_f64(record.gauss));
    println!("  H       = {}", fmt_f64(record.mean));
    println!("  kappa_g = {}", fmt_f64(record.kappa_g));
    println!("  kappa_n = {}", fmt_f64(record.kappa_n));
    println!("  tau_g   = {}", fmt_f64(record.tau_g));

    if opts.paper_compat {
        println!("compat block (A := 1):");
        println!("  v, K, H, kappa_g, kappa_n, tau_g");
        for v in [0.0, 1.0, 2.0] {
            let r = cylinder_compat_record(v);
            println!(
                "  {}, {}, {}, {}, {}, {}",
                fmt_f64(r.v),
                fmt_f64(r.gauss),
                fmt_f64(r.mean_published),
                fmt_f64(r.kappa_g),
                fmt_f64(r.kappa_n),
                fmt_f64(r.tau_g)
            );
        }
        println!("  note: {COMPAT_NOTE}");
    }
    println!("note: {K_SIGN_NOTE}");
    Ok(true)
}
