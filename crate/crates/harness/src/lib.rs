//! Operational surface for `sphereworld`: scenario files, path validation
//! with exit codes, continuity probes, batch runs and SVG rendering.

pub mod batch;
pub mod exit;
pub mod probe;
pub mod render;
pub mod run;
pub mod scenario;

pub use exit::{ExitCode, Failure};
pub use run::{run_file, run_scenario, Outcome, PathDoc, ReportDoc};
pub use scenario::{prepare, Engine, Overrides, Prepared, Scenario};
