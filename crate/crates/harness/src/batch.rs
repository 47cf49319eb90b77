//! Parallel batch runs over a directory of scenarios.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::exit::{ExitCode, Failure};
use crate::run::{run_file, Outcome};
use crate::scenario::Overrides;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummaryRow {
    pub scenario: String,
    pub exit_code: i32,
    pub status: String,
    pub valid: bool,
    pub space: String,
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub k: Option<usize>,
    pub mode: String,
    pub rule_count: Option<usize>,
    pub tc: Option<usize>,
    pub tc_gap: Option<i64>,
    pub experimental: Option<bool>,
    pub rule_ids: String,
    pub samples: Option<usize>,
    pub min_separation: Option<f64>,
    pub plan_ms: f64,
    pub validate_ms: f64,
    pub message: String,
}

impl SummaryRow {
    fn new(scenario: String, o: &Outcome) -> Self {
        let setup = o.report.setup.as_ref();
        let v = o.report.validation.as_ref();
        SummaryRow {
            scenario,
            exit_code: o.code.code(),
            status: o.code.label().to_string(),
            valid: o.code == ExitCode::Valid,
            space: setup.map(|s| s.space.clone()).unwrap_or_default(),
            n: setup.map(|s| s.n),
            m: setup.map(|s| s.m),
            k: setup.map(|s| s.k),
            mode: setup.map(|s| s.mode.clone()).unwrap_or_default(),
            rule_count: setup.map(|s| s.rule_count),
            tc: setup.and_then(|s| s.tc),
            tc_gap: setup.and_then(|s| s.tc_gap),
            experimental: setup.map(|s| s.experimental),
            rule_ids: v.map(|v| v.rule_ids.join(" ")).unwrap_or_default(),
            samples: v.map(|v| v.samples),
            min_separation: v.and_then(|v| v.min_separation),
            plan_ms: o.timings.plan_ms,
            validate_ms: o.timings.validate_ms,
            message: o
                .report
                .message
                .clone()
                .or_else(|| v.map(|v| v.failures.join("; ")))
                .unwrap_or_default(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct BatchSummary {
    pub rows: Vec<SummaryRow>,
    /// Exit code of the first failing scenario (in name order), else 0.
    pub code: ExitCode,
}

/// `*.json` files directly inside `dir`, sorted by name.
pub fn scenario_files(dir: &Path) -> Result<Vec<PathBuf>, Failure> {
    let entries = fs::read_dir(dir).map_err(|e| Failure::new(ExitCode::Usage, format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(Result::ok)
        .map(|e| e.path())
        .filter(|p| p.is_file() && p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

/// Runs every scenario in `dir` on `parallelism` workers; per-scenario
/// outputs go to `out/<stem>/`, the summary to `out/summary.csv`.
pub fn run_batch(dir: &Path, out: &Path, parallelism: usize, overrides: Overrides) -> Result<BatchSummary, Failure> {
    let files = scenario_files(dir)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(parallelism.max(1))
        .build()
        .map_err(|e| Failure::new(ExitCode::Usage, e.to_string()))?;
    let outcomes: Vec<(String, Outcome)> = pool.install(|| {
        files
            .par_iter()
            .map(|file| {
                let stem = file.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
                let outcome = run_file(file, overrides, Some(&out.join(&stem)));
                (stem, outcome)
            })
            .collect()
    });
    let rows: Vec<SummaryRow> = outcomes.iter().map(|(name, o)| SummaryRow::new(name.clone(), o)).collect();
    let code = outcomes.iter().map(|(_, o)| o.code).find(|&c| c != ExitCode::Valid).unwrap_or(ExitCode::Valid);
    write_summary(&out.join("summary.csv"), &rows)?;
    Ok(BatchSummary { rows, code })
}

/// An empty batch produces an empty file.
fn write_summary(file: &Path, rows: &[SummaryRow]) -> Result<(), Failure> {
    let io = |e: String| Failure::new(ExitCode::Usage, format!("{}: {e}", file.display()));
    if let Some(parent) = file.parent() {
        fs::create_dir_all(parent).map_err(|e| io(e.to_string()))?;
    }
    let mut w = csv::Writer::from_path(file).map_err(|e| io(e.to_string()))?;
    for row in rows {
        w.serialize(row).map_err(|e| io(e.to_string()))?;
    }
    w.flush().map_err(|e| io(e.to_string()))
}
