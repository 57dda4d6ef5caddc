//! `ruled`: config-driven computations on ruled surfaces in three-dimensional
//! Lie groups with bi-invariant metrics.
//!
//! Exit codes: 0 success, 1 assertion or classification failure, 2 usage or
//! configuration error.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::Options;
use config::ScenarioConfig;

#[derive(Parser)]
#[command(
    name = "ruled",
    version,
    about = "Ruled surfaces in 3D Lie groups: frames, curvature invariants, classification"
)]
struct Cli {
    /// Scenario config file (TOML). Required by every subcommand except
    /// `example-cylinder`.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Output directory for tables, meshes and reports.
    #[arg(long, global = true, value_name = "DIR", default_value = ".")]
    out: PathBuf,

    /// Worker threads for grid evaluation (output order is unaffected).
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,

    /// Overrides the relevant tolerance of the subcommand.
    #[arg(long, global = true, value_name = "X")]
    tol: Option<f64>,

    /// Seed for the randomized property suites.
    #[arg(long, global = true, value_name = "N", default_value_t = 42)]
    seed: u64,

    /// Adds the A := 1 compat block to `example-cylinder` output.
    #[arg(long, global = true)]
    paper_compat: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the algebra constants (antisymmetry, Jacobi, bi-invariance).
    Validate,
    /// Frenet apparatus over the s-grid, written as CSV.
    Frenet,
    /// Invariant table, classification and pipeline comparison for the surface.
    SurfaceReport,
    /// Grid classification only.
    Classify,
    /// Quad mesh of the surface in chart coordinates.
    Mesh,
    /// Run every verification check; exit 1 if any asserting check fails.
    Verify,
    /// Reproduce the worked cylinder scenario.
    ExampleCylinder,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let opts = Options {
        out: cli.out,
        jobs: cli.jobs,
        tol: cli.tol,
        seed: cli.seed,
        paper_compat: cli.paper_compat,
    };

    let needs_config = !matches!(cli.command, Command::ExampleCylinder);
    let config = if needs_config {
        let Some(path) = cli.config.as_deref() else {
            eprintln!("error: --config PATH is required for this subcommand");
            return ExitCode::from(2);
        };
        match ScenarioConfig::load(path) {
            Ok(c) => Some(c),
            Err(e) => {
                eprintln!("config error: {e:#}");
                return ExitCode::from(2);
            }
        }
    } else {
        None
    };

    let result = match cli.command {
        Command::Validate => commands::cmd_validate(config.as_ref().unwrap(), &opts),
        Command::Frenet => commands::cmd_frenet(config.as_ref().unwrap(), &opts),
        Command::SurfaceReport => commands::cmd_surface_report(config.as_ref().unwrap(), &opts),
        Command::Classify => commands::cmd_classify(config.as_ref().unwrap(), &opts),
        Command::Mesh => commands::cmd_mesh(config.as_ref().unwrap(), &opts),
        Command::Verify => commands::cmd_verify(config.as_ref().unwrap(), &opts),
        Command::ExampleCylinder => commands::cmd_example_cylinder(&opts),
    };

    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
