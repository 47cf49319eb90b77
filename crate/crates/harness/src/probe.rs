//! Empirical continuity probes: perturb a pair inside its rule domain and
//! measure how far the planned path moves.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sphereworld::path::Section;
use sphereworld::planner::{LANE_AXIS, SPREAD_AXIS};
use sphereworld::sample::{euclidean_configuration, free_configuration};
use sphereworld::{Configuration64, Mode, Planner64, Point};

use crate::scenario::Engine;

/// Estimates above this are flagged.
pub const LIPSCHITZ_LIMIT: f64 = 1e6;
/// Global times at which both paths are compared.
pub const PROBE_TIMES: usize = 129;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbeOptions {
    pub trials: usize,
    pub delta: f64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RuleEstimate {
    pub rule_id: String,
    pub trials: usize,
    pub max_ratio: f64,
    pub flagged: bool,
}

/// A pair and a perturbation that trades one level between start and goal;
/// only merged rules contain both.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TradeOff {
    pub rule_id: String,
    pub levels: [usize; 2],
    pub perturbed_levels: [usize; 2],
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProbeReport {
    pub mode: String,
    pub experimental: bool,
    pub delta: f64,
    pub trials: usize,
    /// Trials whose perturbation left the rule domain or the space.
    pub skipped: usize,
    pub limit: f64,
    pub rules: Vec<RuleEstimate>,
    pub trade_offs: Vec<TradeOff>,
    /// No rule flagged.
    pub clean: bool,
}

fn times() -> Vec<f64> {
    (0..PROBE_TIMES).map(|j| j as f64 / (PROBE_TIMES - 1) as f64).collect()
}

fn sample_section<S: Section<f64>>(s: &S, ts: &[f64]) -> Option<Vec<Configuration64>> {
    ts.iter().map(|&t| s.eval_global(t).ok()).collect()
}

/// Rule id and the section sampled at `ts`.
fn trace(engine: &Engine, a: &Configuration64, b: &Configuration64, ts: &[f64]) -> Option<(String, Vec<Configuration64>)> {
    match engine {
        Engine::World(p) => {
            let s = p.section(a, b).ok()?;
            Some((s.rule_id().to_string(), sample_section(&s, ts)?))
        }
        Engine::Euclidean(p) => inner_trace(p, a, b, ts),
    }
}

fn inner_trace(p: &Planner64, a: &Configuration64, b: &Configuration64, ts: &[f64]) -> Option<(String, Vec<Configuration64>)> {
    let s = p.section(a, b).ok()?;
    Some((s.rule_id().to_string(), sample_section(&s, ts)?))
}

fn deviation(x: &[Configuration64], y: &[Configuration64]) -> f64 {
    x.iter().zip(y).map(|(p, q)| p.max_displacement(q)).fold(0.0, f64::max)
}

fn perturb(rng: &mut ChaCha8Rng, c: &Configuration64, delta: f64) -> Configuration64 {
    let points = c
        .points()
        .iter()
        .map(|p| Point::new(p.coords().iter().map(|x| x + rng.gen_range(-delta..=delta)).collect()))
        .collect();
    Configuration64::from_points(points)
}

fn admissible(engine: &Engine, c: &Configuration64) -> bool {
    if !c.is_pairwise_distinct() {
        return false;
    }
    match engine {
        Engine::World(p) => c.points().iter().all(|q| p.world().contains_interior(q).unwrap_or(false)),
        Engine::Euclidean(p) => c.points().iter().all(|q| !p.punctures().contains(q)),
    }
}

fn random_pair(engine: &Engine, rng: &mut ChaCha8Rng) -> (Configuration64, Configuration64) {
    let draw = |rng: &mut ChaCha8Rng| match engine {
        Engine::World(p) => free_configuration(rng, p.world(), engine.k(), 0.0),
        Engine::Euclidean(p) => euclidean_configuration(rng, p.dim(), p.k(), 2.0, p.punctures()),
    };
    let a = draw(rng);
    let b = draw(rng);
    (a, b)
}

/// Per-rule estimates of `sup_t |s(A',B')(t) - s(A,B)(t)| / |(A',B') - (A,B)|`
/// over `trials` random pairs with perturbations of size `delta`.
pub fn probe_continuity(engine: &Engine, opts: ProbeOptions) -> ProbeReport {
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let ts = times();
    let mut per_rule: BTreeMap<String, (usize, f64)> = BTreeMap::new();
    let mut skipped = 0;
    for _ in 0..opts.trials {
        let (a, b) = random_pair(engine, &mut rng);
        let a2 = perturb(&mut rng, &a, opts.delta);
        let b2 = perturb(&mut rng, &b, opts.delta);
        if !admissible(engine, &a2) || !admissible(engine, &b2) {
            skipped += 1;
            continue;
        }
        let (Some((rule, x)), Some((rule2, y))) = (trace(engine, &a, &b, &ts), trace(engine, &a2, &b2, &ts)) else {
            skipped += 1;
            continue;
        };
        if rule != rule2 {
            skipped += 1;
            continue;
        }
        let input = a.max_displacement(&a2).max(b.max_displacement(&b2));
        if input == 0.0 {
            skipped += 1;
            continue;
        }
        let ratio = deviation(&x, &y) / input;
        let slot = per_rule.entry(rule).or_insert((0, 0.0));
        slot.0 += 1;
        slot.1 = slot.1.max(ratio);
    }
    let rules: Vec<RuleEstimate> = per_rule
        .into_iter()
        .map(|(rule_id, (trials, max_ratio))| RuleEstimate {
            rule_id,
            trials,
            max_ratio,
            flagged: max_ratio.is_nan() || max_ratio >= LIPSCHITZ_LIMIT,
        })
        .collect();
    let inner = engine.inner();
    let trade_offs = if inner.mode() == Mode::Merged { trade_offs(inner, opts.delta) } else { Vec::new() };
    ProbeReport {
        mode: inner.mode().to_string(),
        experimental: inner.experimental(),
        delta: opts.delta,
        trials: opts.trials,
        skipped,
        limit: LIPSCHITZ_LIMIT,
        clean: rules.iter().all(|r| !r.flagged),
        rules,
        trade_offs,
    }
}

/// Robots strung out along the spread axis well clear of the punctures;
/// `tie` moves robot `j` to `offset` from robot 0.
fn staged(planner: &Planner64, j: usize, offset: f64, shift: f64) -> Configuration64 {
    let top = planner.punctures().iter().map(|q| q[LANE_AXIS]).fold(0.0, f64::max);
    let right = planner.punctures().iter().map(|q| q[SPREAD_AXIS]).fold(0.0, f64::max);
    let points = (0..planner.k())
        .map(|i| {
            let mut p = Point::origin(planner.dim());
            let e = if i == j { offset } else { i as f64 };
            p.coords_mut()[SPREAD_AXIS] = right + 10.0 + shift + e;
            p.coords_mut()[LANE_AXIS] = top + 10.0 + i as f64;
            p
        })
        .collect();
    Configuration64::from_points(points)
}

/// Pairs `(A, B)` with a tie in `A` and a near-tie in `B`, perturbed into a
/// near-tie in `A` and a tie in `B`.
pub fn trade_offs(planner: &Planner64, delta: f64) -> Vec<TradeOff> {
    let ts = times();
    let mut out = Vec::new();
    for j in 1..planner.k() {
        let a = staged(planner, j, 0.0, 0.0);
        let b = staged(planner, j, delta, 5.0);
        let a2 = staged(planner, j, delta, 0.0);
        let b2 = staged(planner, j, 0.0, 5.0);
        let (Some((rule, x)), Some((rule2, y))) =
            (inner_trace(planner, &a, &b, &ts), inner_trace(planner, &a2, &b2, &ts))
        else {
            continue;
        };
        if rule != rule2 {
            continue;
        }
        let input = a.max_displacement(&a2).max(b.max_displacement(&b2));
        out.push(TradeOff {
            rule_id: rule,
            levels: [planner.levels(&a), planner.levels(&b)],
            perturbed_levels: [planner.levels(&a2), planner.levels(&b2)],
            ratio: deviation(&x, &y) / input,
        });
    }
    out
}
