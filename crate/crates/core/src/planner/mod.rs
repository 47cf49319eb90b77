//! Motion planners with finitely many local rules on `F(R^n, k)` and
//! `F(R^n - Q, k)`.
//!
//! Every planner here uses the same five-phase "spread" section (see
//! [`spread`]); planners differ only in how the pair space is cut into rule
//! domains:
//!
//! * [`Mode::Strict`] has one rule per pair `(λ(A), λ(B))`, where `λ` counts
//!   the distinct values of the first coordinate. Tie structure is locally
//!   constant on each domain, which is what makes each section continuous.
//! * [`Mode::Merged`] has one rule per sum `λ(A) + λ(B)`, giving `2k - 1`
//!   rules on `F(R^n, k)`.
//!
//! With punctures, `λ` is taken over robots and punctures together and each
//! rule is further split by the set of robots that needed a detour around a
//! puncture. Those planners are flagged experimental.

mod census;
pub mod spread;

use std::fmt;

use thiserror::Error;

use crate::configuration::Configuration;
use crate::geometry::Point;
use crate::path::{sample_section, PiecewisePath, SamplingOptions};
use crate::scalar::Real;

pub use census::{rule_census, witness_pairs, Census, RuleHits};
pub use spread::{Detour, SpreadSection, PHASE_NAMES};

/// Coordinate used to count levels and separate ties.
pub const SPREAD_AXIS: usize = 0;
/// Coordinate that carries the lanes.
pub const LANE_AXIS: usize = 1;
/// Distance between neighbouring lanes, and from the top puncture to the
/// lane base.
pub const LANE_SPACING: f64 = 1.0;
/// Largest robot count for which detour patterns are enumerated.
pub const MAX_PUNCTURED_ROBOTS: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Strict,
    Merged,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Strict => "strict",
            Mode::Merged => "merged",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "strict" => Ok(Mode::Strict),
            "merged" => Ok(Mode::Merged),
            other => Err(format!("unknown planner mode {other:?}")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum PlanError {
    #[error("planner needs n >= 2 and k >= 1, got n = {n}, k = {k}")]
    InvalidSpace { n: usize, k: usize },
    #[error("punctured planners support at most {MAX_PUNCTURED_ROBOTS} robots, got {0}")]
    TooManyRobots(usize),
    #[error("puncture {0} has the wrong dimension or is not finite")]
    BadPuncture(usize),
    #[error("punctures {0} and {1} coincide")]
    DuplicatePuncture(usize, usize),
    #[error("configuration has k = {k}, n = {n}; planner expects k = {expected_k}, n = {expected_n}")]
    Shape { k: usize, n: usize, expected_k: usize, expected_n: usize },
    #[error("configuration has non-finite coordinates")]
    NonFinite,
    #[error("robots {0} and {1} coincide")]
    Collision(usize, usize),
    #[error("robot {robot} sits on puncture {puncture}")]
    AtPuncture { robot: usize, puncture: usize },
    #[error("no rule matched the pair (coverage violated): {0}")]
    NoRuleMatched(String),
    #[error("{0}")]
    Transport(String),
}

/// Combinatorial data of a pair that decides which rule fires.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomainKey {
    pub start_levels: usize,
    pub goal_levels: usize,
    /// Bit `i` set when the robot on lane `i` takes a detour (always 0
    /// without punctures).
    pub detours: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RuleDomain {
    /// Pairs with `λ(A) = start`, `λ(B) = goal`.
    Levels { start: usize, goal: usize, detours: Option<u32> },
    /// Pairs with `λ(A) + λ(B) = sum`.
    LevelSum { sum: usize, detours: Option<u32> },
}

impl RuleDomain {
    pub fn contains(&self, key: &DomainKey) -> bool {
        let pattern_ok = |d: &Option<u32>| d.is_none_or(|d| d == key.detours);
        match self {
            RuleDomain::Levels { start, goal, detours } => {
                *start == key.start_levels && *goal == key.goal_levels && pattern_ok(detours)
            }
            RuleDomain::LevelSum { sum, detours } => {
                *sum == key.start_levels + key.goal_levels && pattern_ok(detours)
            }
        }
    }
}

/// A local rule: a domain in the pair space; its section is the planner's
/// spread construction restricted to that domain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalRule {
    pub id: String,
    pub domain: RuleDomain,
}

/// A planner on `F(R^n - Q, k)` (with `Q` possibly empty).
#[derive(Clone, Debug)]
pub struct Planner<T> {
    dim: usize,
    k: usize,
    mode: Mode,
    punctures: Vec<Point<T>>,
    lane_base: T,
    detour_radius: T,
    detour_height: T,
    rules: Vec<LocalRule>,
}

fn detour_suffix(pattern: u32, k: usize) -> String {
    (0..k).map(|i| if pattern >> i & 1 == 1 { '1' } else { '0' }).collect()
}

fn rule_id(mode: Mode, start: usize, goal: usize, detours: Option<(u32, usize)>) -> String {
    let base = match mode {
        Mode::Strict => format!("strict:{start}x{goal}"),
        Mode::Merged => format!("merged:{}", start + goal),
    };
    match detours {
        Some((pattern, k)) => format!("{base}+d{}", detour_suffix(pattern, k)),
        None => base,
    }
}

fn distinct_levels<T: Real>(values: &mut Vec<T>) -> usize {
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    values.dedup();
    values.len()
}

impl<T: Real> Planner<T> {
    /// Planner on `F(R^n, k)`.
    pub fn spread(n: usize, k: usize, mode: Mode) -> Result<Self, PlanError> {
        Self::punctured(n, k, Vec::new(), mode)
    }

    /// Planner on `F(R^n - Q, k)`. With no punctures this is exactly
    /// [`Planner::spread`].
    pub fn punctured(
        n: usize,
        k: usize,
        punctures: Vec<Point<T>>,
        mode: Mode,
    ) -> Result<Self, PlanError> {
        if n < 2 || k < 1 {
            return Err(PlanError::InvalidSpace { n, k });
        }
        for (i, q) in punctures.iter().enumerate() {
            if q.dim() != n || !q.is_finite() {
                return Err(PlanError::BadPuncture(i));
            }
            if let Some(j) = punctures[..i].iter().position(|other| other == q) {
                return Err(PlanError::DuplicatePuncture(j, i));
            }
        }
        let m = punctures.len();
        if m > 0 && k > MAX_PUNCTURED_ROBOTS {
            return Err(PlanError::TooManyRobots(k));
        }

        let (lane_base, detour_radius) = if m == 0 {
            (T::zero(), T::zero())
        } else {
            let top = punctures.iter().map(|q| q[LANE_AXIS]).fold(T::neg_infinity(), T::max);
            let spacing = T::lit(LANE_SPACING);
            let lane_base = top + spacing;
            let lowest_lane = lane_base + spacing;
            let mut reach = punctures
                .iter()
                .map(|q| lowest_lane - q[LANE_AXIS])
                .fold(T::infinity(), T::min);
            for (i, a) in punctures.iter().enumerate() {
                for b in &punctures[i + 1..] {
                    reach = reach.min(a.distance(b));
                }
            }
            (lane_base, T::half() * reach)
        };

        let mut levels: Vec<T> = punctures.iter().map(|q| q[SPREAD_AXIS]).collect();
        let puncture_levels = distinct_levels(&mut levels);
        // achievable λ over robots ∪ punctures
        let lo = puncture_levels.max(1);
        let hi = puncture_levels + k;
        let patterns: Vec<Option<u32>> =
            if m == 0 { vec![None] } else { (0..(1u32 << k)).map(Some).collect() };

        let mut rules = Vec::new();
        match mode {
            Mode::Strict => {
                for start in lo..=hi {
                    for goal in lo..=hi {
                        for &d in &patterns {
                            rules.push(LocalRule {
                                id: rule_id(mode, start, goal, d.map(|d| (d, k))),
                                domain: RuleDomain::Levels { start, goal, detours: d },
                            });
                        }
                    }
                }
            }
            Mode::Merged => {
                for sum in (2 * lo)..=(2 * hi) {
                    for &d in &patterns {
                        rules.push(LocalRule {
                            id: rule_id(mode, sum - lo, lo, d.map(|d| (d, k))),
                            domain: RuleDomain::LevelSum { sum, detours: d },
                        });
                    }
                }
            }
        }

        Ok(Planner {
            dim: n,
            k,
            mode,
            punctures,
            lane_base,
            detour_radius,
            detour_height: detour_radius,
            rules,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn punctures(&self) -> &[Point<T>] {
        &self.punctures
    }

    pub fn rules(&self) -> &[LocalRule] {
        &self.rules
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    /// Merged mode and punctured planners lack a continuity proof.
    pub fn experimental(&self) -> bool {
        self.mode == Mode::Merged || !self.punctures.is_empty()
    }

    /// Lanes sit at `lane_base + j * LANE_SPACING` for `j = 1..=k`.
    pub fn lane_base(&self) -> T {
        self.lane_base
    }

    /// Detour trigger distance `ε` (zero without punctures).
    pub fn detour_radius(&self) -> T {
        self.detour_radius
    }

    /// Peak detour offset `β`.
    pub fn detour_height(&self) -> T {
        self.detour_height
    }

    /// Number of distinct spread-axis values among `c`'s points and the
    /// punctures.
    pub fn levels(&self, c: &Configuration<T>) -> usize {
        let mut values: Vec<T> = c
            .points()
            .iter()
            .chain(self.punctures.iter())
            .map(|p| p[SPREAD_AXIS])
            .collect();
        distinct_levels(&mut values)
    }

    pub(crate) fn check_endpoint(&self, c: &Configuration<T>) -> Result<(), PlanError> {
        if c.k() != self.k || c.points().iter().any(|p| p.dim() != self.dim) {
            return Err(PlanError::Shape {
                k: c.k(),
                n: c.dim(),
                expected_k: self.k,
                expected_n: self.dim,
            });
        }
        if c.points().iter().any(|p| !p.is_finite()) {
            return Err(PlanError::NonFinite);
        }
        if let Some((i, j)) = c.first_collision() {
            return Err(PlanError::Collision(i, j));
        }
        for (robot, p) in c.points().iter().enumerate() {
            if let Some(puncture) = self.punctures.iter().position(|q| q == p) {
                return Err(PlanError::AtPuncture { robot, puncture });
            }
        }
        Ok(())
    }

    /// First rule (in order) whose domain contains `key`.
    pub fn dispatch(&self, key: &DomainKey) -> Result<&LocalRule, PlanError> {
        self.rules
            .iter()
            .find(|r| r.domain.contains(key))
            .ok_or_else(|| PlanError::NoRuleMatched(format!("{key:?}")))
    }

    /// The continuous section for the pair `(a, b)`.
    pub fn section(
        &self,
        a: &Configuration<T>,
        b: &Configuration<T>,
    ) -> Result<SpreadSection<T>, PlanError> {
        self.check_endpoint(a)?;
        self.check_endpoint(b)?;
        SpreadSection::build(self, a, b)
    }

    /// Rule that fires for `(a, b)`.
    pub fn rule_for(&self, a: &Configuration<T>, b: &Configuration<T>) -> Result<String, PlanError> {
        Ok(self.section(a, b)?.rule_id().to_string())
    }

    pub fn plan(
        &self,
        a: &Configuration<T>,
        b: &Configuration<T>,
        opts: SamplingOptions,
    ) -> Result<PiecewisePath<T>, PlanError> {
        let section = self.section(a, b)?;
        sample_section(&section, opts)
    }
}
