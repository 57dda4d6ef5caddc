//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the criterion id (run with `--nocapture` to see them all).
//!
//! Where the definitional and closed-form pipelines are known to diverge
//! (see the table in `ruled_core::verify`), both sides are asserted against
//! independently hand-derived expressions instead of against each other, and
//! the divergence itself is asserted to stay visible in the reports.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use ruled_core::algebra::{cross, LieAlgebra3, Vec3g};
use ruled_core::frenet::{frenet_at, tau_g, Curve};
use ruled_core::invariants::{
    classify, curve_invariants_closed_form, curve_invariants_definitional, cylinder_compat_record,
    distribution_parameter, gauss_mean_closed_form, gauss_mean_definitional, striction_offset,
    DistributionParameter, COMPAT_NOTE, K_SIGN_NOTE,
};
use ruled_core::surfaces::{cylinder, RuledSurfaceSpec};
use ruled_core::verify::{compare_pipelines, frenet_residuals, property_suite};

fn linspace(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

fn so3() -> LieAlgebra3 {
    LieAlgebra3::builtin("so3").unwrap()
}

fn abelian() -> LieAlgebra3 {
    LieAlgebra3::builtin("abelian").unwrap()
}

fn helix() -> Curve {
    Curve::helix(0.8, 0.6).unwrap()
}

fn random_unit(rng: &mut ChaCha8Rng) -> Vec3g {
    loop {
        let v = Vec3g::new(
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        );
        if let Some(u) = v.normalized(1e-6) {
            return u;
        }
    }
}

fn random_curve(rng: &mut ChaCha8Rng) -> Curve {
    if rng.gen_bool(0.25) {
        Curve::circle()
    } else {
        let theta: f64 = rng.gen_range(0.35..1.45);
        Curve::helix(theta.sin(), theta.cos()).unwrap()
    }
}

#[test]
fn c01_cylinder_exact_values() {
    let spec = cylinder(so3());
    for t in linspace(0.0, 6.0, 13) {
        let lambda = distribution_parameter(&spec, t).unwrap().finite().unwrap();
        assert!((lambda - 2.0).abs() <= 1e-9, "lambda = {lambda} at t = {t}");
        let d = frenet_at(&so3(), &Curve::circle(), t).unwrap();
        assert!((d.kappa - 1.0).abs() <= 1e-8);
        assert!(d.tau.abs() <= 1e-8);
        assert!((d.tau_g - 0.5).abs() <= 1e-8);
    }
    println!("ACCEPTANCE C01 cylinder exact values (lambda, kappa, tau, tau_G): PASS");
}

#[test]
fn c02_cylinder_definitional_at_base() {
    let spec = cylinder(so3());
    for t in [0.0, 1.1, 2.7] {
        let (k, h) = gauss_mean_definitional(&spec, t, 0.0).unwrap();
        assert!((k + 0.25).abs() <= 1e-6, "K = {k}");
        assert!((h + 0.5).abs() <= 1e-6, "H = {h}");
        let ci = curve_invariants_definitional(&spec, t, 0.0).unwrap();
        assert!(ci.kappa_g.abs() <= 1e-6, "kappa_g = {}", ci.kappa_g);
        assert!((ci.kappa_n + 1.0).abs() <= 1e-6, "kappa_n = {}", ci.kappa_n);
        assert!(ci.tau_g.abs() <= 1e-6, "tau_g = {}", ci.tau_g);
    }
    println!("ACCEPTANCE C02 cylinder definitional invariants at v = 0: PASS");
}

#[test]
fn c03_compat_block_reproduces_published_table() {
    for v in [0.0_f64, 1.0, 2.0] {
        let r = cylinder_compat_record(v);
        assert!(
            (r.gauss - (-1.0 / (v * v + 4.0))).abs() <= 1e-9,
            "K at v = {v}"
        );
        assert!(
            (r.mean_published - (-(v * v + 2.0) / (v * v + 4.0))).abs() <= 1e-9,
            "H at v = {v}"
        );
        assert!((r.kappa_g - v / 2.0).abs() <= 1e-9, "kappa_g at v = {v}");
        assert!((r.kappa_n + 1.0).abs() <= 1e-9, "kappa_n at v = {v}");
        assert!((r.tau_g + v / 2.0).abs() <= 1e-9, "tau_g at v = {v}");
    }
    // The discrepancy note must be emitted with the block.
    assert!(COMPAT_NOTE.contains("A := 1"));
    assert!(COMPAT_NOTE.contains("v = 0"));
    println!("ACCEPTANCE C03 compat block (A := 1) matches the published table: PASS");
}

#[test]
fn c04_group_torsion_constants_on_random_frames() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let so3 = so3();
    let ab = abelian();
    for _ in 0..50 {
        // Random right-handed orthonormal frame.
        let t = random_unit(&mut rng);
        let raw = random_unit(&mut rng);
        let n = (raw - t * raw.dot(t)).normalized(1e-6).unwrap();
        let b = cross(t, n);
        assert!((tau_g(&so3, t, n, b) - 0.5).abs() <= 1e-8);
        assert_eq!(
            tau_g(&ab, t, n, b),
            0.0,
            "abelian group torsion must be exactly zero"
        );
    }
    // Also along frames computed from random curves.
    for _ in 0..50 {
        let curve = random_curve(&mut rng);
        let s = rng.gen_range(0.0..6.0);
        let d = frenet_at(&so3, &curve, s).unwrap();
        assert!((d.tau_g - 0.5).abs() <= 1e-8);
    }
    println!("ACCEPTANCE C04 group torsion constants (so3 = 1/2, abelian = 0): PASS");
}

#[test]
fn c05_striction_theorem_for_left_invariant_directors() {
    for name in ["so3", "so3-scaled-2"] {
        let alg = LieAlgebra3::builtin(name).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..50 {
            let curve = random_curve(&mut rng);
            let x = random_unit(&mut rng);
            let s = rng.gen_range(0.0..6.0);
            let spec = RuledSurfaceSpec::general(alg.clone(), curve, x).unwrap();
            let offset = striction_offset(&spec, s).unwrap();
            assert!(offset.abs() <= 1e-10, "{name}: offset {offset} for X = {x}");
        }
    }
    println!("ACCEPTANCE C05 striction curve equals base curve (50 random pairs): PASS");
}

#[test]
fn c06_tangent_developable_of_helix() {
    let spec = RuledSurfaceSpec::tangent_developable(so3(), helix());
    let s_grid = linspace(0.1, 4.1, 21);
    let v_grid = linspace(0.1, 2.0, 21);
    for &s in &s_grid {
        let lambda = distribution_parameter(&spec, s).unwrap().finite().unwrap();
        assert!(lambda.abs() <= 1e-8, "lambda = {lambda}");
        let fr = spec.frenet(s).unwrap();
        let tt = fr.tau + fr.tau_g;
        for &v in &v_grid {
            let (k, h_def) = gauss_mean_definitional(&spec, s, v).unwrap();
            assert!(k.abs() <= 1e-8, "K = {k}");
            let ci = curve_invariants_definitional(&spec, s, v).unwrap();
            assert!(ci.kappa_n.abs() <= 1e-6, "kappa_n = {}", ci.kappa_n);
            assert!(ci.tau_g.abs() <= 1e-6, "tau_g = {}", ci.tau_g);
            assert!(
                (ci.kappa_g + fr.kappa).abs() <= 1e-6,
                "kappa_g = {}",
                ci.kappa_g
            );
            // Closed form evaluates the published H = -(tau+tau_G)/(2 v^2 kappa).
            let (_, h_closed) = gauss_mean_closed_form(&spec, s, v).unwrap();
            let want_closed = -tt / (2.0 * v * v * fr.kappa);
            assert!(
                (h_closed - want_closed).abs() <= 1e-5 * want_closed.abs(),
                "closed H {h_closed} vs {want_closed}"
            );
            // The definitional H satisfies the derived form -(tau+tau_G)/(2 v kappa).
            let want_def = -tt / (2.0 * v * fr.kappa);
            assert!(
                (h_def - want_def).abs() <= 1e-5 * want_def.abs(),
                "definitional H {h_def} vs {want_def}"
            );
        }
    }
    println!("ACCEPTANCE C06 tangent developable (flat, asymptotic, principal; H forms): PASS");
}

#[test]
fn c07_dual_pipeline_normal_and_binormal() {
    let s_grid = linspace(0.1, 4.1, 21);
    let v_grid = linspace(0.1, 2.0, 21);
    let tol = 1e-5;

    // Normal family: lambda, K, kappa_g, kappa_n, tau_g agree across
    // pipelines; H is report-only (its closed form is not self-consistent).
    let normal = RuledSurfaceSpec::normal_surface(so3(), helix());
    let reports = compare_pipelines(&normal, &s_grid, &v_grid, tol);
    for r in &reports {
        if r.asserting {
            assert!(
                r.pass,
                "normal/{}: max_rel_dev {}",
                r.quantity, r.max_rel_dev
            );
        }
    }
    assert!(
        ["lambda", "K", "kappa_g", "kappa_n", "tau_g"]
            .iter()
            .all(|q| reports
                .iter()
                .any(|r| r.quantity == *q && r.asserting && r.pass)),
        "normal family asserting set must cover lambda, K, kappa_g, kappa_n, tau_g"
    );
    // Both H routes against hand-derived expressions (kappa' = tau' = 0).
    for &s in &s_grid[..5] {
        let fr = normal.frenet(s).unwrap();
        let tt = fr.tau + fr.tau_g;
        for &v in &v_grid[..5] {
            let (_, h_def) = gauss_mean_definitional(&normal, s, v).unwrap();
            assert!(
                h_def.abs() <= 1e-6,
                "definitional H = {h_def} (derives to 0 for a helix)"
            );
            let (_, h_closed) = gauss_mean_closed_form(&normal, s, v).unwrap();
            let a = (v * v * tt * tt + (1.0 - v * fr.kappa).powi(2)).sqrt();
            let want = -v * tt * (1.0 - v * fr.kappa) / (2.0 * a * a * a);
            assert!(
                (h_closed - want).abs() <= 1e-5 * (1.0 + want.abs()),
                "closed H {h_closed}"
            );
        }
    }

    // Binormal family: lambda, K, kappa_n assert; H, kappa_g, tau_g are
    // report-only and each side must match its own derived expression.
    let binormal = RuledSurfaceSpec::binormal_surface(so3(), helix());
    let reports = compare_pipelines(&binormal, &s_grid, &v_grid, tol);
    for r in &reports {
        if r.asserting {
            assert!(
                r.pass,
                "binormal/{}: max_rel_dev {}",
                r.quantity, r.max_rel_dev
            );
        }
    }
    for q in ["H", "kappa_g", "tau_g"] {
        let r = reports.iter().find(|r| r.quantity == q).unwrap();
        assert!(!r.asserting, "binormal/{q} must be report-only");
        assert!(
            r.max_rel_dev > 1e-3,
            "binormal/{q} divergence must stay visible in the report"
        );
    }
    for &s in &s_grid[..5] {
        let fr = binormal.frenet(s).unwrap();
        let tt = fr.tau + fr.tau_g;
        for &v in &v_grid[..5] {
            let a = (1.0 + v * v * tt * tt).sqrt();
            let (_, h_def) = gauss_mean_definitional(&binormal, s, v).unwrap();
            let want_def = -(v * v * fr.kappa * tt * tt + fr.kappa) / (2.0 * a * a * a);
            assert!((h_def - want_def).abs() <= 1e-5 * (1.0 + want_def.abs()));
            let (_, h_closed) = gauss_mean_closed_form(&binormal, s, v).unwrap();
            let want_closed = (v * v * fr.kappa * tt + fr.kappa) / (2.0 * a * a * a);
            assert!((h_closed - want_closed).abs() <= 1e-5 * (1.0 + want_closed.abs()));
            let ci_def = curve_invariants_definitional(&binormal, s, v).unwrap();
            assert!(
                ci_def.kappa_g.abs() <= 1e-6,
                "definitional kappa_g (base is a geodesic)"
            );
            let want_tau_g = -v * fr.kappa * tt * tt / (a * a);
            assert!((ci_def.tau_g - want_tau_g).abs() <= 1e-5 * (1.0 + want_tau_g.abs()));
            let ci_closed = curve_invariants_closed_form(&binormal, s, v).unwrap();
            assert!((ci_closed.kappa_g - fr.kappa / a).abs() <= 1e-9);
        }
    }
    println!("ACCEPTANCE C07 dual-pipeline (normal, binormal; divergent forms quantified): PASS");
}

#[test]
fn c08_darboux_developable_of_helix() {
    let spec = RuledSurfaceSpec::darboux_developable(so3(), helix());
    let s_grid = linspace(0.1, 4.1, 21);
    // Away from the singular locus tau + tau_G = v kappa (v = 1.375 here).
    let v_grid = linspace(0.1, 1.2, 21);
    for &s in &s_grid {
        let lambda = distribution_parameter(&spec, s).unwrap().finite().unwrap();
        assert!(lambda.abs() <= 1e-8);
        let fr = spec.frenet(s).unwrap();
        let tt = fr.tau + fr.tau_g;
        for &v in &v_grid {
            let (k, h_def) = gauss_mean_definitional(&spec, s, v).unwrap();
            assert!(k.abs() <= 1e-8, "K = {k}");
            let ci = curve_invariants_definitional(&spec, s, v).unwrap();
            assert!((ci.kappa_g - fr.kappa).abs() <= 1e-6);
            assert!(ci.kappa_n.abs() <= 1e-6);
            assert!(ci.tau_g.abs() <= 1e-6);
            let (_, h_closed) = gauss_mean_closed_form(&spec, s, v).unwrap();
            let want_closed = 1.0 / (2.0 * (tt - v * fr.kappa));
            assert!(
                (h_closed - want_closed).abs() <= 1e-5 * want_closed.abs(),
                "closed H {h_closed} vs {want_closed}"
            );
            // Definitional H derives to -(tau+tau_G)/(2 (tau+tau_G - v kappa)).
            let want_def = -tt / (2.0 * (tt - v * fr.kappa));
            assert!(
                (h_def - want_def).abs() <= 1e-5 * want_def.abs(),
                "definitional H {h_def} vs {want_def}"
            );
        }
    }
    println!("ACCEPTANCE C08 darboux developable (flat; H forms on both routes): PASS");
}

#[test]
fn c09_abelian_reduction() {
    // The abelian cylinder has a constant ruling field: degenerate lambda,
    // classified developable through the vanishing second-form f.
    let cyl = cylinder(abelian());
    let s_grid = linspace(0.0, 6.0, 9);
    let c = classify(&cyl, &s_grid, &[-1.0, 0.0, 1.0], 1e-8).unwrap();
    assert!(c.developable, "abelian cylinder must classify developable");
    assert!(c.degenerate_ruling);

    // The rectifying surface of a helix in the abelian algebra is a cylinder
    // over the axis direction: degenerate ruling, developable.
    let rect = RuledSurfaceSpec::rectifying(abelian(), helix());
    for &s in &s_grid {
        match distribution_parameter(&rect, s).unwrap() {
            DistributionParameter::Degenerate => {}
            DistributionParameter::Finite(l) => {
                assert!(l.abs() <= 1e-8, "lambda = {l} at s = {s}")
            }
        }
    }
    let c = classify(&rect, &linspace(0.5, 4.5, 7), &linspace(0.1, 1.5, 5), 1e-8).unwrap();
    assert!(
        c.developable,
        "abelian rectifying surface must classify developable"
    );
    println!("ACCEPTANCE C09 abelian reduction (cylinder, rectifying developable): PASS");
}

#[test]
fn c10_developability_equivalence_for_random_directors() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let so3 = so3();
    let s_grid = linspace(0.1, 5.9, 8);
    for case in 0..100 {
        let curve = random_curve(&mut rng);
        let x = random_unit(&mut rng);
        let spec = RuledSurfaceSpec::general(so3.clone(), curve, x).unwrap();
        let mut lambda_small = true;
        let mut ip_small = true;
        for &s in &s_grid {
            match distribution_parameter(&spec, s).unwrap() {
                DistributionParameter::Finite(l) => {
                    if l.abs() > 1e-8 {
                        lambda_small = false;
                    }
                }
                DistributionParameter::Degenerate => {}
            }
            let fr = spec.frenet(s).unwrap();
            if cross(fr.tangent, x).dot(so3.bracket(fr.tangent, x)).abs() > 1e-8 {
                ip_small = false;
            }
        }
        assert_eq!(
            lambda_small, ip_small,
            "case {case}: developability flag and <T x X, [T, X]> disagree for X = {x}"
        );
    }
    println!("ACCEPTANCE C10 developable iff T x X orthogonal to [T, X] (100 cases): PASS");
}

#[test]
fn c11_frame_equation_residuals_on_builtins() {
    let algebras = ["abelian", "so3", "so3-scaled-2"].map(|n| LieAlgebra3::builtin(n).unwrap());
    let curves = [Curve::circle(), helix()];
    for alg in &algebras {
        for curve in &curves {
            for s in linspace(0.2, 5.8, 15) {
                let r = frenet_residuals(alg, curve, s).unwrap();
                assert!(
                    r.max_frame() <= 1e-4,
                    "{}: frame residual {} at s = {s}",
                    alg.name(),
                    r.max_frame()
                );
                assert!(
                    r.max_bracket() <= 1e-6,
                    "{}: bracket residual {} at s = {s}",
                    alg.name(),
                    r.max_bracket()
                );
            }
        }
    }
    println!("ACCEPTANCE C11 frame equation and bracket relation residuals: PASS");
}

#[test]
fn c12_definitional_gauss_curvature_nonpositive_everywhere() {
    let s_grid = linspace(0.1, 4.1, 11);
    let v_grid = linspace(-1.5, 2.0, 11);
    let specs: Vec<RuledSurfaceSpec> = vec![
        cylinder(so3()),
        cylinder(abelian()),
        RuledSurfaceSpec::tangent_developable(so3(), helix()),
        RuledSurfaceSpec::normal_surface(so3(), helix()),
        RuledSurfaceSpec::binormal_surface(so3(), helix()),
        RuledSurfaceSpec::darboux_developable(so3(), helix()),
        RuledSurfaceSpec::rectifying(so3(), helix()),
        RuledSurfaceSpec::normal_surface(abelian(), helix()),
    ];
    let mut regular = 0usize;
    for spec in &specs {
        for &s in &s_grid {
            for &v in &v_grid {
                // Singular cells are exempt.
                if let Ok((k, _)) = gauss_mean_definitional(spec, s, v) {
                    regular += 1;
                    assert!(
                        k <= 1e-12,
                        "{}: K = {k} at ({s}, {v})",
                        spec.family().as_str()
                    );
                }
            }
        }
    }
    assert!(
        regular > 800,
        "expected a substantial regular sample, got {regular}"
    );
    // The sign-structure note is part of every classification.
    let c = classify(&cylinder(so3()), &s_grid, &[0.0, 1.0], 1e-8).unwrap();
    assert_eq!(c.k_sign_note, K_SIGN_NOTE);
    println!("ACCEPTANCE C12 definitional K <= 0 at every regular point (note logged): PASS");
}

#[test]
fn acceptance_property_suite_seed_42() {
    // Umbrella for the randomized structural checks used throughout.
    let report = property_suite(42, 100);
    for check in &report.checks {
        assert!(
            check.pass,
            "{}: max violation {}",
            check.name, check.max_violation
        );
    }
    println!("ACCEPTANCE property suite (seed 42, 100 cases): PASS");
}
