//! The five-phase spread section.
//!
//! For a pair `(A, B)` the robot motion passes through six waypoints
//!
//! ```text
//! A -> S(A) -> Lane(S(A)) -> Lane(S(B)) -> S(B) -> B
//!   separate  lane       travel       unlane   merge
//! ```
//!
//! `S(C)` breaks ties in the spread coordinate: robots sharing a spread value
//! are ordered lexicographically and shifted by `rank * δ(C)` with
//! `δ(C) = gap / 4k`, where `gap` is the smallest spacing between distinct
//! spread values (1 if there is only one). Offsets stay below a quarter gap,
//! so tie groups never reach each other.
//!
//! `Lane(·)` replaces the lane coordinate by the robot's lane, one lane per
//! robot ordered by its spread value in `S(A)`. During *lane* and *unlane*
//! spread values are fixed and distinct; during *travel* lane values are fixed
//! and distinct. Lane assignment never looks at labels, so the section is
//! equivariant under relabeling.
//!
//! With punctures, straight sub-paths that pass within `ε` of a puncture get
//! a tent-shaped offset perpendicular to their direction of motion, pushed
//! away from the puncture.

use std::cmp::Ordering;

use super::{DomainKey, PlanError, Planner, LANE_AXIS, LANE_SPACING, SPREAD_AXIS};
use crate::configuration::Configuration;
use crate::path::{Section, Stage};
use crate::scalar::Real;

pub const PHASE_NAMES: [&str; 5] = ["separate", "lane", "travel", "unlane", "merge"];

/// Tent peaks are kept this far from the phase ends.
const PEAK_MARGIN: f64 = 0.05;

#[derive(Clone, Debug, PartialEq)]
pub struct Detour<T> {
    pub phase: usize,
    pub robot: usize,
    pub axis: usize,
    /// Signed peak offset.
    pub offset: T,
    /// Local time of the tent peak.
    pub peak: T,
}

impl<T: Real> Detour<T> {
    fn profile(&self, tau: T) -> T {
        if tau <= self.peak {
            tau / self.peak
        } else {
            (T::one() - tau) / (T::one() - self.peak)
        }
    }
}

#[derive(Clone, Debug)]
pub struct SpreadSection<T> {
    rule_id: String,
    key: DomainKey,
    waypoints: Vec<Configuration<T>>,
    detours: Vec<Detour<T>>,
}

/// Tie separation along the spread axis. `levels` are the sorted distinct
/// spread values of robots and punctures.
pub(crate) fn separate<T: Real>(c: &Configuration<T>, levels: &[T]) -> Configuration<T> {
    let k = c.k();
    let gap = levels
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(T::infinity(), T::min);
    let gap = if gap.is_finite() { gap } else { T::one() };
    let delta = gap / (T::lit(4.0) * T::from_count(k));

    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&i, &j| {
        let (p, q) = (c.point(i), c.point(j));
        p[SPREAD_AXIS]
            .partial_cmp(&q[SPREAD_AXIS])
            .unwrap_or(Ordering::Equal)
            .then_with(|| p.lex_cmp(q))
    });
    let mut points = c.points().to_vec();
    let mut rank = 0usize;
    for w in 0..order.len() {
        if w > 0 && c.point(order[w])[SPREAD_AXIS] == c.point(order[w - 1])[SPREAD_AXIS] {
            rank += 1;
        } else {
            rank = 0;
        }
        if rank > 0 {
            let p = &mut points[order[w]];
            let e = p[SPREAD_AXIS];
            p.coords_mut()[SPREAD_AXIS] = e + T::from_count(rank) * delta;
        }
    }
    Configuration::from_points(points)
}

fn sorted_levels<T: Real>(c: &Configuration<T>, planner: &Planner<T>) -> Vec<T> {
    let mut values: Vec<T> = c
        .points()
        .iter()
        .chain(planner.punctures().iter())
        .map(|p| p[SPREAD_AXIS])
        .collect();
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    values.dedup();
    values
}

fn with_lanes<T: Real>(c: &Configuration<T>, lanes: &[T]) -> Configuration<T> {
    let points = c
        .points()
        .iter()
        .zip(lanes)
        .map(|(p, &lane)| {
            let mut p = p.clone();
            p.coords_mut()[LANE_AXIS] = lane;
            p
        })
        .collect();
    Configuration::from_points(points)
}

impl<T: Real> SpreadSection<T> {
    pub(crate) fn build(
        planner: &Planner<T>,
        a: &Configuration<T>,
        b: &Configuration<T>,
    ) -> Result<Self, PlanError> {
        let k = a.k();
        let levels_a = sorted_levels(a, planner);
        let levels_b = sorted_levels(b, planner);
        let sep_a = separate(a, &levels_a);
        let sep_b = separate(b, &levels_b);

        let mut by_spread: Vec<usize> = (0..k).collect();
        by_spread.sort_by(|&i, &j| {
            sep_a.point(i)[SPREAD_AXIS]
                .partial_cmp(&sep_a.point(j)[SPREAD_AXIS])
                .unwrap_or(Ordering::Equal)
        });
        let mut lanes = vec![T::zero(); k];
        let mut ranks = vec![0usize; k];
        for (rank, &i) in by_spread.iter().enumerate() {
            lanes[i] = planner.lane_base() + T::from_count(rank + 1) * T::lit(LANE_SPACING);
            ranks[i] = rank;
        }
        let lane_a = with_lanes(&sep_a, &lanes);
        let lane_b = with_lanes(&sep_b, &lanes);
        let waypoints = vec![a.clone(), sep_a, lane_a, lane_b, sep_b, b.clone()];

        let detours = if planner.punctures().is_empty() {
            Vec::new()
        } else {
            plan_detours(planner, &waypoints)
        };
        // indexed by lane rank so the pattern does not depend on labels
        let pattern = detours.iter().fold(0u32, |acc, d| acc | (1 << ranks[d.robot]));
        let key = DomainKey {
            start_levels: levels_a.len(),
            goal_levels: levels_b.len(),
            detours: pattern,
        };
        let rule_id = planner.dispatch(&key)?.id.clone();
        Ok(SpreadSection { rule_id, key, waypoints, detours })
    }

    pub fn rule_id(&self) -> &str {
        &self.rule_id
    }

    pub fn domain_key(&self) -> &DomainKey {
        &self.key
    }

    /// `A, S(A), Lane(S(A)), Lane(S(B)), S(B), B`.
    pub fn waypoints(&self) -> &[Configuration<T>] {
        &self.waypoints
    }

    pub fn detours(&self) -> &[Detour<T>] {
        &self.detours
    }
}

/// Phases whose straight sub-paths may approach a puncture. Travel runs on
/// lanes at least `2ε` above every puncture.
const DETOUR_PHASES: [usize; 4] = [0, 1, 3, 4];

fn plan_detours<T: Real>(planner: &Planner<T>, waypoints: &[Configuration<T>]) -> Vec<Detour<T>> {
    let eps = planner.detour_radius();
    let beta = planner.detour_height();
    let n = planner.dim();
    let margin = T::lit(PEAK_MARGIN);
    let mut out = Vec::new();
    for &phase in &DETOUR_PHASES {
        // separate/merge move along the spread axis, lane/unlane along the lane axis
        let moving = if phase == 0 || phase == 4 { SPREAD_AXIS } else { LANE_AXIS };
        let axis = if n >= 3 {
            2
        } else if moving == SPREAD_AXIS {
            LANE_AXIS
        } else {
            SPREAD_AXIS
        };
        let (from, to) = (&waypoints[phase], &waypoints[phase + 1]);
        for robot in 0..from.k() {
            let (p0, p1) = (from.point(robot), to.point(robot));
            if p0 == p1 {
                continue;
            }
            let dir = p1.sub(p0);
            let len2 = dir.norm_squared();
            for q in planner.punctures() {
                let tau = (q.sub(p0).dot(&dir) / len2).max(T::zero()).min(T::one());
                let clearance = p0.lerp(p1, tau).distance(q);
                if clearance < eps {
                    let height = beta * (T::one() - clearance / eps);
                    let sign = if p0[axis] - q[axis] >= T::zero() { T::one() } else { -T::one() };
                    out.push(Detour {
                        phase,
                        robot,
                        axis,
                        offset: sign * height,
                        peak: tau.max(margin).min(T::one() - margin),
                    });
                }
            }
        }
    }
    out
}

impl<T: Real> Section<T> for SpreadSection<T> {
    type Error = PlanError;

    fn stages(&self) -> Vec<Stage<T>> {
        let five = T::lit(5.0);
        PHASE_NAMES
            .iter()
            .enumerate()
            .map(|(j, name)| Stage {
                rule_id: self.rule_id.clone(),
                phase: (*name).to_string(),
                t0: T::from_count(j) / five,
                t1: T::from_count(j + 1) / five,
            })
            .collect()
    }

    fn eval(&self, stage: usize, tau: T) -> Result<Configuration<T>, PlanError> {
        let c = self.waypoints[stage].lerp(&self.waypoints[stage + 1], tau);
        if tau <= T::zero() || tau >= T::one() {
            return Ok(c);
        }
        let mut points = c.into_points();
        for d in self.detours.iter().filter(|d| d.phase == stage) {
            let x = &mut points[d.robot].coords_mut()[d.axis];
            *x = *x + d.offset * d.profile(tau);
        }
        Ok(Configuration::from_points(points))
    }
}
