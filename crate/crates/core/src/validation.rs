//! Dense-sample path validation.
//!
//! A path is accepted when every sample is collision free and inside the
//! target space, interior samples stay off the boundary, every segment passes
//! the inter-sample guard, segment joins are exact, and the endpoints equal the
//! requested configurations bit for bit.

use crate::configuration::Configuration;
use crate::geometry::Point;
use crate::path::{PiecewisePath, StepStats};
use crate::scalar::Real;
use crate::world::SphereWorld;

/// Space a path is validated against.
#[derive(Clone, Copy, Debug)]
pub enum TargetSpace<'a, T> {
    World(&'a SphereWorld<T>),
    Punctured { dim: usize, punctures: &'a [Point<T>] },
}

impl<T: Real> TargetSpace<'_, T> {
    fn dim(&self) -> usize {
        match self {
            TargetSpace::World(w) => w.dim(),
            TargetSpace::Punctured { dim, .. } => *dim,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport<T> {
    pub valid: bool,
    /// `+inf` for a single robot.
    pub min_separation: T,
    /// Over interior samples; `None` outside sphere worlds.
    pub min_boundary_clearance: Option<T>,
    /// `None` when there are no punctures.
    pub min_puncture_clearance: Option<T>,
    pub max_step: T,
    pub guard_ok: bool,
    pub endpoints_ok: bool,
    pub joins_ok: bool,
    pub rule_ids: Vec<String>,
    pub segments: usize,
    pub samples: usize,
    pub failures: Vec<String>,
}

/// Validates `path`; `start`/`goal` are compared exactly when given.
pub fn validate_path<T: Real>(
    space: TargetSpace<'_, T>,
    path: &PiecewisePath<T>,
    start: Option<&Configuration<T>>,
    goal: Option<&Configuration<T>>,
) -> ValidationReport<T> {
    let mut failures = Vec::new();
    let mut min_separation = T::infinity();
    let mut max_step = T::zero();
    let mut min_boundary: Option<T> = None;
    let mut min_puncture: Option<T> = None;
    let mut guard_ok = true;
    let total = path.sample_count();
    let dim = space.dim();
    let k = path.start().map_or(0, Configuration::k);

    if total == 0 {
        failures.push("path has no samples".to_string());
    }

    let mut index = 0usize;
    for (si, seg) in path.segments.iter().enumerate() {
        if seg.samples.len() < 2 {
            failures.push(format!("segment {si} has fewer than two samples"));
        }
        let mut malformed = false;
        for c in &seg.samples {
            let is_endpoint = index == 0 || index + 1 == total;
            index += 1;
            if c.k() != k || c.points().iter().any(|p| p.dim() != dim || !p.is_finite()) {
                failures.push(format!("segment {si}: malformed sample"));
                malformed = true;
                continue;
            }
            let sep = c.min_pair_distance();
            min_separation = min_separation.min(sep);
            if !(sep > T::zero()) {
                failures.push(format!("segment {si}: robots collide"));
            }
            match space {
                TargetSpace::World(world) => {
                    for p in c.points() {
                        let clearance = world.clearance_unchecked(p);
                        if clearance < T::zero() || !world.contains(p).unwrap_or(false) {
                            failures.push(format!("segment {si}: sample leaves the free space"));
                        } else if !is_endpoint {
                            min_boundary = Some(min_boundary.map_or(clearance, |m: T| m.min(clearance)));
                            if !(clearance > T::zero()) {
                                failures.push(format!("segment {si}: interior sample touches the boundary"));
                            }
                        }
                    }
                }
                TargetSpace::Punctured { punctures, .. } => {
                    for p in c.points() {
                        for q in punctures {
                            let d = p.distance(q);
                            min_puncture = Some(min_puncture.map_or(d, |m: T| m.min(d)));
                            if !(d > T::zero()) {
                                failures.push(format!("segment {si}: sample hits a puncture"));
                            }
                        }
                    }
                }
            }
        }
        if malformed {
            guard_ok = false;
            continue;
        }
        let stats = StepStats::of(&seg.samples);
        max_step = max_step.max(stats.max_step);
        if !stats.guard_holds() {
            guard_ok = false;
            failures.push(format!(
                "segment {si}: step {:e} not below half the separation {:e}",
                stats.max_step.as_f64(),
                stats.min_separation.as_f64()
            ));
        }
    }

    let joins_ok = path.joins_exact();
    if !joins_ok {
        failures.push("segment joins are not exact".to_string());
    }
    let mut endpoints_ok = true;
    if let Some(s) = start {
        if path.start() != Some(s) {
            endpoints_ok = false;
            failures.push("path does not start at the requested configuration".to_string());
        }
    }
    if let Some(g) = goal {
        if path.end() != Some(g) {
            endpoints_ok = false;
            failures.push("path does not end at the requested configuration".to_string());
        }
    }
    failures.dedup();

    ValidationReport {
        valid: failures.is_empty(),
        min_separation,
        min_boundary_clearance: min_boundary,
        min_puncture_clearance: min_puncture,
        max_step,
        guard_ok,
        endpoints_ok,
        joins_ok,
        rule_ids: path.rule_ids(),
        segments: path.segments.len(),
        samples: total,
        failures,
    }
}
