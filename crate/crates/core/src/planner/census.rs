//! Rule census: which rules fire on a sample of pairs, plus explicit witness
//! pairs that reach every rule of an unpunctured planner.

use super::{PlanError, Planner, RuleDomain, LANE_AXIS, SPREAD_AXIS};
use crate::configuration::Configuration;
use crate::geometry::Point;
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleHits {
    pub rule_id: String,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub hits: Vec<RuleHits>,
    pub total_rules: usize,
}

impl Census {
    pub fn unreached(&self) -> Vec<&str> {
        self.hits.iter().filter(|h| h.count == 0).map(|h| h.rule_id.as_str()).collect()
    }
}

/// Counts rule firings over `pairs`, reporting every rule of the planner.
pub fn rule_census<T: Real>(
    planner: &Planner<T>,
    pairs: &[(Configuration<T>, Configuration<T>)],
) -> Result<Census, PlanError> {
    let mut hits: Vec<RuleHits> = planner
        .rules()
        .iter()
        .map(|r| RuleHits { rule_id: r.id.clone(), count: 0 })
        .collect();
    for (a, b) in pairs {
        let id = planner.rule_for(a, b)?;
        let slot = hits.iter_mut().find(|h| h.rule_id == id).expect("dispatch returns a planner rule");
        slot.count += 1;
    }
    Ok(Census { hits, total_rules: planner.rule_count() })
}

/// `k` distinct points with exactly `levels` distinct spread values; robots
/// `levels-1 ..` share the last value and are told apart by the lane axis.
pub fn configuration_with_levels<T: Real>(
    dim: usize,
    k: usize,
    levels: usize,
    lift: T,
) -> Configuration<T> {
    let points = (0..k)
        .map(|i| {
            let mut p = Point::origin(dim);
            p.coords_mut()[SPREAD_AXIS] = T::from_count(i.min(levels - 1));
            p.coords_mut()[LANE_AXIS] = T::from_count(i) + lift;
            p
        })
        .collect();
    Configuration::new(points).expect("distinct lane values")
}

/// Rule id with a start and goal that fire it.
pub type Witness<T> = (String, Configuration<T>, Configuration<T>);

/// One witness pair per rule, for planners without punctures.
pub fn witness_pairs<T: Real>(planner: &Planner<T>) -> Result<Vec<Witness<T>>, PlanError> {
    if !planner.punctures().is_empty() {
        return Err(PlanError::Transport(
            "witness construction covers planners without punctures".into(),
        ));
    }
    let (n, k) = (planner.dim(), planner.k());
    planner
        .rules()
        .iter()
        .map(|rule| {
            let (start, goal) = match rule.domain {
                RuleDomain::Levels { start, goal, .. } => (start, goal),
                RuleDomain::LevelSum { sum, .. } => {
                    let start = sum.saturating_sub(k).max(1);
                    (start, sum - start)
                }
            };
            let a = configuration_with_levels(n, k, start, T::zero());
            let b = configuration_with_levels(n, k, goal, T::lit(0.5));
            Ok((rule.id.clone(), a, b))
        })
        .collect()
}
