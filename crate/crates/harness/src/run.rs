//! Plan, validate and serialise one scenario.

use std::fs;
use std::path::Path;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sphereworld::{
    validate_path, Configuration64, PiecewisePath64, SamplingOptions, Segment, TargetSpace, ValidationReport,
};

use crate::exit::{ExitCode, Failure};
use crate::scenario::{prepare, transport_error_code, Engine, Overrides, Prepared, Scenario};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SegmentDoc {
    pub rule_id: String,
    #[serde(default)]
    pub phase: String,
    pub t0: f64,
    pub t1: f64,
    pub samples: Vec<Vec<Vec<f64>>>,
}

/// Setup facts that do not depend on the path.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SetupDoc {
    pub space: String,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub mode: String,
    pub seed: u64,
    pub rule_count: usize,
    pub experimental: bool,
    pub tc: Option<usize>,
    pub tc_row: Option<String>,
    pub tc_gap: Option<i64>,
    pub start: Vec<Vec<f64>>,
    pub goal: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationDoc {
    pub valid: bool,
    /// `null` for a single robot.
    pub min_separation: Option<f64>,
    pub min_boundary_clearance: Option<f64>,
    pub min_puncture_clearance: Option<f64>,
    pub max_step: f64,
    pub guard_ok: bool,
    pub endpoints_ok: bool,
    pub joins_ok: bool,
    pub rule_ids: Vec<String>,
    pub segments: usize,
    pub samples: usize,
    pub failures: Vec<String>,
}

impl From<&ValidationReport<f64>> for ValidationDoc {
    fn from(r: &ValidationReport<f64>) -> Self {
        ValidationDoc {
            valid: r.valid,
            min_separation: Some(r.min_separation).filter(|x| x.is_finite()),
            min_boundary_clearance: r.min_boundary_clearance,
            min_puncture_clearance: r.min_puncture_clearance,
            max_step: r.max_step,
            guard_ok: r.guard_ok,
            endpoints_ok: r.endpoints_ok,
            joins_ok: r.joins_ok,
            rule_ids: r.rule_ids.clone(),
            segments: r.segments,
            samples: r.samples,
            failures: r.failures.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub status: String,
    pub exit_code: i32,
    pub message: Option<String>,
    pub setup: Option<SetupDoc>,
    pub validation: Option<ValidationDoc>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathDoc {
    pub segments: Vec<SegmentDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<ReportDoc>,
}

impl PathDoc {
    pub fn from_path(path: &PiecewisePath64, report: Option<ReportDoc>) -> Self {
        let segments = path
            .segments
            .iter()
            .map(|s| SegmentDoc {
                rule_id: s.rule_id.clone(),
                phase: s.phase.clone(),
                t0: s.t0,
                t1: s.t1,
                samples: s.samples.iter().map(Configuration64::to_f64).collect(),
            })
            .collect();
        PathDoc { segments, report }
    }

    /// Samples are taken as given, collisions included, so the validator can
    /// judge them.
    pub fn to_path(&self) -> PiecewisePath64 {
        let segments = self
            .segments
            .iter()
            .map(|s| Segment {
                rule_id: s.rule_id.clone(),
                phase: s.phase.clone(),
                t0: s.t0,
                t1: s.t1,
                samples: s
                    .samples
                    .iter()
                    .map(|c| {
                        Configuration64::from_points(
                            c.iter().map(|p| sphereworld::Point::new(p.clone())).collect(),
                        )
                    })
                    .collect(),
            })
            .collect();
        PiecewisePath64 { segments }
    }
}

/// Wall-clock timings, kept out of the deterministic documents.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub plan_ms: f64,
    pub validate_ms: f64,
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub code: ExitCode,
    pub report: ReportDoc,
    pub path: Option<PiecewisePath64>,
    pub timings: Timings,
}

impl Outcome {
    fn failed(f: Failure, setup: Option<SetupDoc>) -> Self {
        Outcome {
            code: f.code,
            report: ReportDoc {
                status: f.code.label().to_string(),
                exit_code: f.code.code(),
                message: Some(f.message),
                setup,
                validation: None,
            },
            path: None,
            timings: Timings::default(),
        }
    }

    /// `{"segments": [...], "report": {...}}`, or `None` without a path.
    pub fn path_doc(&self) -> Option<PathDoc> {
        self.path.as_ref().map(|p| PathDoc::from_path(p, Some(self.report.clone())))
    }

    /// Writes `path.json` (when planned), `report.json` and `timings.json`.
    pub fn write(&self, dir: &Path) -> Result<(), Failure> {
        let io = |e: std::io::Error| Failure::new(ExitCode::Usage, format!("{}: {e}", dir.display()));
        fs::create_dir_all(dir).map_err(io)?;
        if let Some(doc) = self.path_doc() {
            fs::write(dir.join("path.json"), to_json(&doc)).map_err(io)?;
        }
        fs::write(dir.join("report.json"), to_json(&self.report)).map_err(io)?;
        fs::write(dir.join("timings.json"), to_json(&self.timings)).map_err(io)?;
        Ok(())
    }
}

pub fn to_json<S: Serialize>(value: &S) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialise");
    s.push('\n');
    s
}

pub fn setup_doc(p: &Prepared) -> SetupDoc {
    let inner = p.engine.inner();
    let (n, m, k) = (p.engine.dim(), p.engine.m(), p.engine.k());
    let row = sphereworld::tc::tc_row(n, m, k).ok();
    let tc = row.map(|r| r.value(k));
    SetupDoc {
        space: p.engine.kind().to_string(),
        n,
        m,
        k,
        mode: inner.mode().to_string(),
        seed: p.seed,
        rule_count: inner.rule_count(),
        experimental: inner.experimental(),
        tc,
        tc_row: row.map(|r| r.to_string()),
        tc_gap: tc.map(|t| inner.rule_count() as i64 - t as i64),
        start: p.start.to_f64(),
        goal: p.goal.to_f64(),
    }
}

pub fn plan_prepared(p: &Prepared) -> Result<PiecewisePath64, Failure> {
    let opts = SamplingOptions::with_samples(p.samples_per_segment);
    match &p.engine {
        Engine::World(planner) => planner
            .plan(&p.start, &p.goal, opts)
            .map_err(|e| Failure::new(transport_error_code(&e), e.to_string())),
        Engine::Euclidean(planner) => planner
            .plan(&p.start, &p.goal, opts)
            .map_err(|e| Failure::new(ExitCode::PlannerError, e.to_string())),
    }
}

pub fn validate_prepared(p: &Prepared, path: &PiecewisePath64) -> ValidationReport<f64> {
    let space = match &p.engine {
        Engine::World(planner) => TargetSpace::World(planner.world()),
        Engine::Euclidean(planner) => {
            TargetSpace::Punctured { dim: planner.dim(), punctures: planner.punctures() }
        }
    };
    validate_path(space, path, Some(&p.start), Some(&p.goal))
}

/// Plans and validates an already prepared scenario.
pub fn run_prepared(p: &Prepared) -> Outcome {
    let setup = setup_doc(p);
    let clock = Instant::now();
    let path = match plan_prepared(p) {
        Ok(path) => path,
        Err(f) => return Outcome::failed(f, Some(setup)),
    };
    let plan_ms = clock.elapsed().as_secs_f64() * 1e3;
    let clock = Instant::now();
    let report = validate_prepared(p, &path);
    let validate_ms = clock.elapsed().as_secs_f64() * 1e3;
    let code = if report.valid { ExitCode::Valid } else { ExitCode::ValidationFailure };
    Outcome {
        code,
        report: ReportDoc {
            status: code.label().to_string(),
            exit_code: code.code(),
            message: None,
            setup: Some(setup),
            validation: Some(ValidationDoc::from(&report)),
        },
        path: Some(path),
        timings: Timings { plan_ms, validate_ms },
    }
}

pub fn run_scenario(scenario: &Scenario, overrides: Overrides) -> Outcome {
    match prepare(scenario, overrides) {
        Ok(p) => run_prepared(&p),
        Err(f) => Outcome::failed(f, None),
    }
}

/// Loads, runs and (when `out` is given) writes one scenario file.
pub fn run_file(file: &Path, overrides: Overrides, out: Option<&Path>) -> Outcome {
    let outcome = match Scenario::load(file) {
        Ok(s) => run_scenario(&s, overrides),
        Err(f) => Outcome::failed(f, None),
    };
    if let Some(dir) = out {
        if let Err(f) = outcome.write(dir) {
            return Outcome::failed(f, None);
        }
    }
    outcome
}
