//! Scenario runner and named verification suites on top of `ncg_core`.

pub mod error;
pub mod report;
pub mod scenario;
pub mod suites;
pub mod tasks;

use std::path::Path;

use rayon::prelude::*;

pub use error::{CliError, Result};
pub use report::{Entry, Format, Report, Status};
pub use scenario::Scenario;
pub use suites::{DEFAULT_SEED, SUITES};

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub seed: u64,
    pub parallel: bool,
}

impl Default for Options {
    fn default() -> Self {
        Self { seed: DEFAULT_SEED, parallel: false }
    }
}

/// Runs every task of a parsed scenario. Entries follow task order even when
/// tasks run in parallel; the first failing task in that order is reported.
pub fn run_parsed(scenario: &Scenario, opts: Options) -> Result<Report> {
    let indices: Vec<usize> = (0..scenario.tasks.len()).collect();
    let results: Vec<Result<Vec<Entry>>> = if opts.parallel {
        indices.par_iter().map(|&k| tasks::execute(scenario, k, opts.seed)).collect()
    } else {
        indices.iter().map(|&k| tasks::execute(scenario, k, opts.seed)).collect()
    };
    let mut report = Report::default();
    for r in results {
        report.entries.extend(r?);
    }
    Ok(report)
}

pub fn run_scenario_text(text: &str, opts: Options) -> Result<Report> {
    run_parsed(&Scenario::parse(text)?, opts)
}

pub fn run_scenario(path: &Path, opts: Options) -> Result<Report> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    run_scenario_text(&text, opts)
}

pub fn run_suite(name: &str, seed: u64) -> Result<Report> {
    suites::run(name, seed)
}

/// Process exit code: 0 when every check passes, 1 on a failed check.
pub fn exit_code(report: &Report) -> i32 {
    if report.passed() { 0 } else { 1 }
}

/// Exit code for errors raised before any check could run.
pub const INPUT_ERROR: i32 = 2;
