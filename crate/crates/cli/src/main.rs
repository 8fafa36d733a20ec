//! Command-line driver: problem ingestion, pipeline orchestration, and
//! report emission.
//!
//! Exit codes: 0 = report produced, 2 = validation error, 3 = unsupported
//! regime (not simply characteristic / not strictly pseudoconvex), 4 =
//! internal residual failure.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use holoconvex_core::pipeline::{self, RunOptions};
use holoconvex_core::problem::ProblemFile;
use holoconvex_core::selftest;
use holoconvex_core::Error;

#[derive(Parser)]
#[command(name = "holoconvex")]
#[command(about = "Boundary-point classification and characteristic-hypersurface certificates \
                   for linear holomorphic PDE")]
#[command(version)]
struct Cli {
    #[command(subcommand)]
    command: Commands,
}

#[derive(Subcommand)]
enum Commands {
    /// Run the pipeline on a problem file and print a summary.
    Check {
        /// Path to the JSON problem file.
        problem: PathBuf,

        /// Override the truncation order from the problem file.
        #[arg(long)]
        order: Option<usize>,

        /// Override the tolerance from the problem file.
        #[arg(long)]
        tol: Option<f64>,

        /// Override the sampling seed from the problem file.
        #[arg(long)]
        seed: Option<u64>,

        /// Write the machine-readable report to this path.
        #[arg(long)]
        json: Option<PathBuf>,

        /// Also express the certificate surface in the original coordinates.
        #[arg(long)]
        original_coords: bool,

        /// Contact samples per radius (default 10000).
        #[arg(long)]
        samples: Option<usize>,
    },

    /// Run the bundled invariant suites and print a pass/fail table.
    Selftest {
        /// Truncation order for the suites (residual bounds scale with it).
        #[arg(long, default_value_t = 8)]
        order: usize,

        /// Perturb the named suite's expected values (negative control).
        #[arg(long)]
        inject_fault: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Commands::Check {
            problem,
            order,
            tol,
            seed,
            json,
            original_coords,
            samples,
        } => run_check(problem, order, tol, seed, json, original_coords, samples),
        Commands::Selftest {
            order,
            inject_fault,
        } => run_selftest(order, inject_fault.as_deref()),
    }
}

fn run_check(
    path: PathBuf,
    order: Option<usize>,
    tol: Option<f64>,
    seed: Option<u64>,
    json: Option<PathBuf>,
    original_coords: bool,
    samples: Option<usize>,
) -> ExitCode {
    let started = Instant::now();
    let text = match fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return ExitCode::from(2);
        }
    };
    let mut file = match ProblemFile::from_json(&text) {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    if let Some(n) = order {
        file.order = n;
    }
    if let Some(t) = tol {
        file.tolerance = t;
    }
    if let Some(s) = seed {
        file.seed = s;
    }
    let problem = match file.validate() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let options = RunOptions {
        original_coords,
        samples,
    };
    let report = match pipeline::run_check(&problem, &options) {
        Ok(r) => r,
        Err(e @ Error::Validation(_)) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(4);
        }
    };
    print!("{}", pipeline::human_summary(&report));
    println!("elapsed: {:.3} s", started.elapsed().as_secs_f64());
    if let Some(out) = json {
        if let Err(e) = fs::write(&out, report.to_json()) {
            eprintln!("error: cannot write {}: {e}", out.display());
            return ExitCode::from(2);
        }
        println!("report written to {}", out.display());
    }
    match report.exit_code() {
        0 => ExitCode::SUCCESS,
        c => ExitCode::from(c as u8),
    }
}

fn run_selftest(order: usize, fault: Option<&str>) -> ExitCode {
    let results = selftest::run_selftest(order, fault);
    print!("{}", selftest::render_table(&results));
    if results.iter().all(|r| r.passed) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
