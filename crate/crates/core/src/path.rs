//! Sampled piecewise paths in configuration space and the adaptive sampler
//! that produces them from continuous sections.

use crate::configuration::Configuration;
use crate::scalar::Real;

/// Default number of samples per segment.
pub const DEFAULT_SAMPLES_PER_SEGMENT: usize = 256;
/// Default bisection depth for segments whose sampling is too coarse.
pub const DEFAULT_MAX_REFINEMENT_DEPTH: u32 = 14;

#[derive(Clone, Debug, PartialEq)]
pub struct Segment<T> {
    /// Local rule that produced this piece (or a stage label).
    pub rule_id: String,
    /// Construction phase within the rule's section.
    pub phase: String,
    pub t0: T,
    pub t1: T,
    /// Uniform-in-time samples over `[t0, t1]`, both ends included.
    pub samples: Vec<Configuration<T>>,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct PiecewisePath<T> {
    pub segments: Vec<Segment<T>>,
}

impl<T: Real> PiecewisePath<T> {
    pub fn start(&self) -> Option<&Configuration<T>> {
        self.segments.first().and_then(|s| s.samples.first())
    }

    pub fn end(&self) -> Option<&Configuration<T>> {
        self.segments.last().and_then(|s| s.samples.last())
    }

    pub fn sample_count(&self) -> usize {
        self.segments.iter().map(|s| s.samples.len()).sum()
    }

    /// Every sample in time order (segment joins appear twice).
    pub fn samples(&self) -> impl Iterator<Item = &Configuration<T>> {
        self.segments.iter().flat_map(|s| s.samples.iter())
    }

    /// Distinct rule ids in order of first appearance.
    pub fn rule_ids(&self) -> Vec<String> {
        let mut ids: Vec<String> = Vec::new();
        for s in &self.segments {
            if !ids.contains(&s.rule_id) {
                ids.push(s.rule_id.clone());
            }
        }
        ids
    }

    /// True when each segment ends exactly where the next begins.
    pub fn joins_exact(&self) -> bool {
        self.segments.windows(2).all(|w| {
            w[0].samples.last() == w[1].samples.first() && w[0].t1 == w[1].t0
        })
    }

    pub fn permute(&self, sigma: &crate::configuration::Permutation) -> Self {
        PiecewisePath {
            segments: self
                .segments
                .iter()
                .map(|s| Segment {
                    rule_id: s.rule_id.clone(),
                    phase: s.phase.clone(),
                    t0: s.t0,
                    t1: s.t1,
                    samples: s.samples.iter().map(|c| c.permute(sigma).expect("size")).collect(),
                })
                .collect(),
        }
    }
}

/// Minimum pairwise separation and maximum per-robot step over a run of
/// consecutive samples.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepStats<T> {
    pub min_separation: T,
    pub max_step: T,
}

impl<T: Real> StepStats<T> {
    pub fn of(samples: &[Configuration<T>]) -> Self {
        let min_separation =
            samples.iter().map(Configuration::min_pair_distance).fold(T::infinity(), T::min);
        let max_step = samples
            .windows(2)
            .map(|w| w[0].max_displacement(&w[1]))
            .fold(T::zero(), T::max);
        StepStats { min_separation, max_step }
    }

    /// The inter-sample guard: every robot moves less than half the smallest
    /// separation seen on the segment.
    pub fn guard_holds(&self) -> bool {
        self.max_step < T::half() * self.min_separation
    }
}

/// Metadata for one stage of a section.
#[derive(Clone, Debug, PartialEq)]
pub struct Stage<T> {
    pub rule_id: String,
    pub phase: String,
    pub t0: T,
    pub t1: T,
}

/// A continuous motion-planning section `[0, 1] -> F(X, k)` split into
/// stages, each parameterised by a local time `tau in [0, 1]`.
///
/// Implementations must return identical configurations at `tau = 1` of one
/// stage and `tau = 0` of the next.
pub trait Section<T: Real> {
    type Error;

    fn stages(&self) -> Vec<Stage<T>>;

    fn eval(&self, stage: usize, tau: T) -> Result<Configuration<T>, Self::Error>;

    /// Evaluates at global time `t in [0, 1]`.
    fn eval_global(&self, t: T) -> Result<Configuration<T>, Self::Error> {
        let stages = self.stages();
        let last = stages.len() - 1;
        let idx = stages.iter().position(|s| t <= s.t1).unwrap_or(last);
        let s = &stages[idx];
        let tau = ((t - s.t0) / (s.t1 - s.t0)).max(T::zero()).min(T::one());
        self.eval(idx, tau)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamplingOptions {
    pub samples_per_segment: usize,
    pub max_refinement_depth: u32,
}

impl Default for SamplingOptions {
    fn default() -> Self {
        SamplingOptions {
            samples_per_segment: DEFAULT_SAMPLES_PER_SEGMENT,
            max_refinement_depth: DEFAULT_MAX_REFINEMENT_DEPTH,
        }
    }
}

impl SamplingOptions {
    pub fn with_samples(samples_per_segment: usize) -> Self {
        SamplingOptions { samples_per_segment, ..Default::default() }
    }
}

/// Samples every stage of `section`, bisecting any piece whose samples fail
/// the inter-sample guard until it holds or the depth limit is reached.
pub fn sample_section<T: Real, S: Section<T> + ?Sized>(
    section: &S,
    opts: SamplingOptions,
) -> Result<PiecewisePath<T>, S::Error> {
    let n = opts.samples_per_segment.max(2);
    let mut segments = Vec::new();
    for (idx, stage) in section.stages().into_iter().enumerate() {
        refine(section, idx, &stage, T::zero(), T::one(), 0, n, opts.max_refinement_depth, &mut segments)?;
    }
    Ok(PiecewisePath { segments })
}

#[allow(clippy::too_many_arguments)]
fn refine<T: Real, S: Section<T> + ?Sized>(
    section: &S,
    idx: usize,
    stage: &Stage<T>,
    tau0: T,
    tau1: T,
    depth: u32,
    n: usize,
    max_depth: u32,
    out: &mut Vec<Segment<T>>,
) -> Result<(), S::Error> {
    let denom = T::from_count(n - 1);
    let mut samples = Vec::with_capacity(n);
    for j in 0..n {
        let tau = if j == 0 {
            tau0
        } else if j == n - 1 {
            tau1
        } else {
            tau0 + (tau1 - tau0) * (T::from_count(j) / denom)
        };
        samples.push(section.eval(idx, tau)?);
    }
    if depth < max_depth && !StepStats::of(&samples).guard_holds() {
        let mid = T::half() * (tau0 + tau1);
        refine(section, idx, stage, tau0, mid, depth + 1, n, max_depth, out)?;
        return refine(section, idx, stage, mid, tau1, depth + 1, n, max_depth, out);
    }
    let span = stage.t1 - stage.t0;
    let to_global = |tau: T| {
        if tau == T::one() {
            stage.t1
        } else {
            stage.t0 + span * tau
        }
    };
    out.push(Segment {
        rule_id: stage.rule_id.clone(),
        phase: stage.phase.clone(),
        t0: to_global(tau0),
        t1: to_global(tau1),
        samples,
    });
    Ok(())
}
