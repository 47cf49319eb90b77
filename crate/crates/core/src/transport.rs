//! Planning in a sphere world by conjugating a punctured-space planner with
//! the collar isotopy and the puncture homeomorphism.
//!
//! A transported path from `A` to `B` has three stages:
//!
//! 1. `t in [0, 1/4]`: `F(H, k)(A, 1 - 4t)` pushes `A` off the boundary to
//!    `F(p, k)(A)`;
//! 2. `t in [1/4, 3/4]`: `phi^{-1}` of the inner plan from `phi(F(p,k)(A))` to
//!    `phi(F(p,k)(B))`;
//! 3. `t in [3/4, 1]`: `F(H, k)(B, 4t - 3)` releases onto `B`.
//!
//! Stage joins are snapped to the exact retracted endpoints after the
//! `phi^{-1} ∘ phi` round-trip drift has been checked.

use thiserror::Error;

use crate::collar::{CollarAtlas, CollarError};
use crate::configuration::Configuration;
use crate::path::{sample_section, PiecewisePath, SamplingOptions, Section, Stage};
use crate::planner::{Mode, PlanError, Planner, SpreadSection, PHASE_NAMES};
use crate::puncture::{PunctureError, PunctureMap};
use crate::scalar::Real;
use crate::tc::{tc_row, TcError, TcRow};
use crate::world::{SphereWorld, WorldError};

/// Allowed `phi^{-1}(phi(p(A)))` drift before snapping, relative to `r0`.
pub const JOIN_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum TransportError {
    #[error(transparent)]
    Collar(#[from] CollarError),
    #[error(transparent)]
    Puncture(#[from] PunctureError),
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error(transparent)]
    World(#[from] WorldError),
    #[error(transparent)]
    Tc(#[from] TcError),
    #[error("{which} configuration is not in F(X, k): {reason}")]
    InvalidEndpoint { which: &'static str, reason: String },
    #[error("stage join drifted by {0:e}")]
    JoinDrift(f64),
}

#[derive(Clone, Debug)]
pub struct TransportedPlanner<T> {
    atlas: CollarAtlas<T>,
    pmap: PunctureMap<T>,
    inner: Planner<T>,
}

impl<T: Real> TransportedPlanner<T> {
    /// Builds the atlas from `width_fraction * min_gap`, the puncture map from
    /// the atlas shells, and the inner planner on `R^n - Q_m`.
    pub fn new(
        world: &SphereWorld<T>,
        k: usize,
        mode: Mode,
        width_fraction: T,
    ) -> Result<Self, TransportError> {
        let atlas = CollarAtlas::with_fraction(world, width_fraction)?;
        Self::from_atlas(atlas, k, mode)
    }

    pub fn from_atlas(atlas: CollarAtlas<T>, k: usize, mode: Mode) -> Result<Self, TransportError> {
        let pmap = PunctureMap::from_atlas(&atlas)?;
        let inner = Planner::punctured(atlas.world().dim(), k, pmap.punctures().to_vec(), mode)?;
        Ok(TransportedPlanner { atlas, pmap, inner })
    }

    pub fn world(&self) -> &SphereWorld<T> {
        self.atlas.world()
    }

    pub fn atlas(&self) -> &CollarAtlas<T> {
        &self.atlas
    }

    pub fn puncture_map(&self) -> &PunctureMap<T> {
        &self.pmap
    }

    pub fn inner(&self) -> &Planner<T> {
        &self.inner
    }

    /// Transport adds no rules.
    pub fn rule_count(&self) -> usize {
        self.inner.rule_count()
    }

    pub fn experimental(&self) -> bool {
        self.inner.experimental()
    }

    fn check_endpoint(&self, c: &Configuration<T>, which: &'static str) -> Result<(), TransportError> {
        let invalid = |reason: String| TransportError::InvalidEndpoint { which, reason };
        if c.k() != self.inner.k() {
            return Err(invalid(format!("expected {} robots, got {}", self.inner.k(), c.k())));
        }
        if let Some((i, p)) = c.points().iter().enumerate().find(|(_, p)| p.dim() != self.world().dim()) {
            return Err(invalid(format!("robot {i} has dimension {}", p.dim())));
        }
        if let Some((i, j)) = c.first_collision() {
            return Err(invalid(format!("robots {i} and {j} coincide")));
        }
        for (i, p) in c.points().iter().enumerate() {
            if !self.world().contains(p)? {
                return Err(invalid(format!("robot {i} is outside the free space")));
            }
        }
        Ok(())
    }

    fn drift_check(&self, retracted: &Configuration<T>, image: &Configuration<T>) -> Result<(), TransportError> {
        let back = self.pmap.config_inverse(image)?;
        let drift = back.max_displacement(retracted);
        if !(drift <= T::lit(JOIN_TOLERANCE) * self.world().work_radius()) {
            return Err(TransportError::JoinDrift(drift.as_f64()));
        }
        Ok(())
    }

    pub fn section<'a>(
        &'a self,
        a: &Configuration<T>,
        b: &Configuration<T>,
    ) -> Result<TransportedSection<'a, T>, TransportError> {
        self.check_endpoint(a, "start")?;
        self.check_endpoint(b, "goal")?;
        let retracted_a = self.atlas.config_retract(a)?;
        let retracted_b = self.atlas.config_retract(b)?;
        let image_a = self.pmap.config_forward(&retracted_a)?;
        let image_b = self.pmap.config_forward(&retracted_b)?;
        self.drift_check(&retracted_a, &image_a)?;
        self.drift_check(&retracted_b, &image_b)?;
        let inner = self.inner.section(&image_a, &image_b)?;
        Ok(TransportedSection {
            planner: self,
            start: a.clone(),
            goal: b.clone(),
            retracted_start: retracted_a,
            retracted_goal: retracted_b,
            inner,
        })
    }

    pub fn plan(
        &self,
        a: &Configuration<T>,
        b: &Configuration<T>,
        opts: SamplingOptions,
    ) -> Result<PiecewisePath<T>, TransportError> {
        let section = self.section(a, b)?;
        sample_section(&section, opts)
    }

    /// TC of `F(X, k)` next to this planner's rule count.
    pub fn tc_report(&self) -> Result<TcReport, TransportError> {
        let n = self.world().dim();
        let m = self.world().obstacle_count();
        let k = self.inner.k();
        let row = tc_row(n, m, k)?;
        let tc = row.value(k);
        let rules = self.rule_count();
        Ok(TcReport {
            n,
            m,
            k,
            mode: self.inner.mode(),
            row,
            tc,
            rule_count: rules,
            gap: rules as i64 - tc as i64,
            experimental: self.experimental(),
        })
    }
}

/// Builds a transported planner with default collar widths and reports its
/// rule count against TC.
pub fn tc_report<T: Real>(
    world: &SphereWorld<T>,
    k: usize,
    mode: Mode,
) -> Result<TcReport, TransportError> {
    TransportedPlanner::new(world, k, mode, T::lit(crate::collar::DEFAULT_WIDTH_FRACTION))?.tc_report()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TcReport {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub mode: Mode,
    pub row: TcRow,
    pub tc: usize,
    pub rule_count: usize,
    /// `rule_count - tc`; never negative for a correct planner.
    pub gap: i64,
    pub experimental: bool,
}

impl TcReport {
    pub fn is_equality(&self) -> bool {
        self.gap == 0
    }
}

/// The continuous transported section for one pair.
#[derive(Clone, Debug)]
pub struct TransportedSection<'a, T> {
    planner: &'a TransportedPlanner<T>,
    start: Configuration<T>,
    goal: Configuration<T>,
    retracted_start: Configuration<T>,
    retracted_goal: Configuration<T>,
    inner: SpreadSection<T>,
}

impl<T: Real> TransportedSection<'_, T> {
    pub fn rule_id(&self) -> &str {
        self.inner.rule_id()
    }

    pub fn inner(&self) -> &SpreadSection<T> {
        &self.inner
    }

    pub fn retracted_start(&self) -> &Configuration<T> {
        &self.retracted_start
    }

    pub fn retracted_goal(&self) -> &Configuration<T> {
        &self.retracted_goal
    }
}

const INNER_STAGES: usize = PHASE_NAMES.len();

impl<T: Real> Section<T> for TransportedSection<'_, T> {
    type Error = TransportError;

    fn stages(&self) -> Vec<Stage<T>> {
        let rule = self.inner.rule_id().to_string();
        let quarter = T::lit(0.25);
        let ten = T::lit(10.0);
        let mut stages = Vec::with_capacity(INNER_STAGES + 2);
        stages.push(Stage { rule_id: rule.clone(), phase: "retract".into(), t0: T::zero(), t1: quarter });
        for (j, name) in PHASE_NAMES.iter().enumerate() {
            stages.push(Stage {
                rule_id: rule.clone(),
                phase: (*name).to_string(),
                t0: quarter + T::from_count(j) / ten,
                t1: quarter + T::from_count(j + 1) / ten,
            });
        }
        stages.push(Stage { rule_id: rule, phase: "release".into(), t0: T::lit(0.75), t1: T::one() });
        stages
    }

    fn eval(&self, stage: usize, tau: T) -> Result<Configuration<T>, TransportError> {
        let atlas = &self.planner.atlas;
        if stage == 0 {
            return if tau <= T::zero() {
                Ok(self.start.clone())
            } else if tau >= T::one() {
                Ok(self.retracted_start.clone())
            } else {
                Ok(atlas.config_isotopy(&self.start, T::one() - tau)?)
            };
        }
        if stage == INNER_STAGES + 1 {
            return if tau <= T::zero() {
                Ok(self.retracted_goal.clone())
            } else if tau >= T::one() {
                Ok(self.goal.clone())
            } else {
                Ok(atlas.config_isotopy(&self.goal, tau)?)
            };
        }
        let phase = stage - 1;
        if phase == 0 && tau <= T::zero() {
            return Ok(self.retracted_start.clone());
        }
        if phase == INNER_STAGES - 1 && tau >= T::one() {
            return Ok(self.retracted_goal.clone());
        }
        let image = self.inner.eval(phase, tau)?;
        Ok(self.planner.pmap.config_inverse(&image)?)
    }
}
