//! Batch experiments for the `geocalc` command-line tool. Each experiment
//! validates its flags, runs, and returns a CSV table.

pub mod args;
pub mod experiments;
pub mod report;

use std::io;

pub use args::{Cli, Experiment};
pub use report::{emit_csv, Table};

/// Exit code for invalid flag values (clap uses the same code).
pub const EXIT_USAGE: i32 = 2;
/// Exit code for configurations that cannot be run, such as CFL violations.
pub const EXIT_CONFIG: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Solver(#[from] geocalc::Error),
    #[error("cannot write report: {0}")]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Solver(geocalc::Error::Cfl { .. } | geocalc::Error::Config(_)) => EXIT_CONFIG,
            CliError::Solver(_) | CliError::Io(_) => 1,
        }
    }
}

pub fn run_experiment(exp: &Experiment) -> Result<Table, CliError> {
    match exp {
        Experiment::AdvectExact(w) => experiments::advect_exact(w),
        Experiment::AdvectConverge(c) => experiments::advect_converge(c),
        Experiment::ClassicalCompare(w) => experiments::classical_compare(w),
        Experiment::NyquistDemo(n) => experiments::nyquist_demo(n),
        Experiment::HankelLift(h) => experiments::hankel_lift(h),
        Experiment::OffsetFailure(w) => experiments::offset_failure(w),
        Experiment::StabilityProbe(s) => experiments::stability_probe(s),
    }
}

pub fn output_path(exp: &Experiment) -> Option<&std::path::Path> {
    let out = match exp {
        Experiment::AdvectExact(w)
        | Experiment::ClassicalCompare(w)
        | Experiment::OffsetFailure(w) => &w.output,
        Experiment::AdvectConverge(c) => &c.output,
        Experiment::NyquistDemo(n) => &n.output,
        Experiment::HankelLift(h) => &h.output,
        Experiment::StabilityProbe(s) => &s.output,
    };
    out.out.as_deref()
}

/// Runs the experiment, writes its report and returns the process exit code.
pub fn execute(exp: &Experiment) -> i32 {
    match run_experiment(exp).and_then(|t| Ok(emit_csv(&t, output_path(exp))?)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("geocalc: {e}");
            e.exit_code()
        }
    }
}
