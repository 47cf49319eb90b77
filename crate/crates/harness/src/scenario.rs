//! Scenario files and their resolution into a planner plus endpoints.

use std::fs;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sphereworld::planner::PlanError;
use sphereworld::sample::{euclidean_configuration, free_configuration};
use sphereworld::transport::TransportError;
use sphereworld::{
    CollarError, Configuration64, Mode, Obstacle, Planner64, Point, Point64, SphereWorld64, TransportedPlanner64,
};

use crate::exit::{ExitCode, Failure};

pub const SEED_ENV: &str = "SPHEREWORLD_MP_SEED";
pub const DEFAULT_WIDTH_FRACTION: f64 = 0.2;
/// Share of randomly drawn robots placed on a boundary sphere.
const RANDOM_BOUNDARY_FRACTION: f64 = 0.25;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObstacleSpec {
    pub center: Vec<f64>,
    pub radius: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WorldSpec {
    pub n: usize,
    pub r0: f64,
    #[serde(default)]
    pub obstacles: Vec<ObstacleSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EuclideanSpec {
    pub n: usize,
    #[serde(default)]
    pub punctures: Vec<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub world: Option<WorldSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euclidean: Option<EuclideanSpec>,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub goal: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub collar_width_fraction: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples_per_segment: Option<usize>,
    #[serde(default)]
    pub seed: u64,
}

impl Scenario {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let text = fs::read_to_string(path)
            .map_err(|e| Failure::new(ExitCode::Usage, format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, Failure> {
        serde_json::from_str(text).map_err(|e| Failure::new(ExitCode::Usage, format!("scenario: {e}")))
    }

    pub fn mode(&self) -> Result<Mode, Failure> {
        match &self.mode {
            None => Ok(Mode::Strict),
            Some(s) => s.parse().map_err(|e: String| Failure::new(ExitCode::Usage, e)),
        }
    }
}

/// Command-line overrides applied on top of a scenario.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub mode: Option<Mode>,
}

impl Overrides {
    /// Reads the seed override from `SPHEREWORLD_MP_SEED`.
    pub fn from_env(mode: Option<Mode>) -> Result<Self, Failure> {
        let seed = match std::env::var(SEED_ENV) {
            Ok(v) => Some(v.trim().parse::<u64>().map_err(|e| {
                Failure::new(ExitCode::Usage, format!("{SEED_ENV}={v:?}: {e}"))
            })?),
            Err(_) => None,
        };
        Ok(Overrides { seed, mode })
    }
}

#[derive(Clone, Debug)]
pub enum Engine {
    World(TransportedPlanner64),
    Euclidean(Planner64),
}

impl Engine {
    pub fn dim(&self) -> usize {
        match self {
            Engine::World(p) => p.world().dim(),
            Engine::Euclidean(p) => p.dim(),
        }
    }

    /// Obstacles or punctures.
    pub fn m(&self) -> usize {
        match self {
            Engine::World(p) => p.world().obstacle_count(),
            Engine::Euclidean(p) => p.punctures().len(),
        }
    }

    pub fn k(&self) -> usize {
        self.inner().k()
    }

    pub fn mode(&self) -> Mode {
        self.inner().mode()
    }

    /// The planner that owns the rules.
    pub fn inner(&self) -> &Planner64 {
        match self {
            Engine::World(p) => p.inner(),
            Engine::Euclidean(p) => p,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Engine::World(_) => "world",
            Engine::Euclidean(_) => "euclidean",
        }
    }
}

/// A scenario resolved into a planner and concrete endpoints.
#[derive(Clone, Debug)]
pub struct Prepared {
    pub seed: u64,
    pub samples_per_segment: usize,
    pub engine: Engine,
    pub start: Configuration64,
    pub goal: Configuration64,
}

fn plan_error_code(e: &PlanError) -> ExitCode {
    match e {
        PlanError::BadPuncture(_) | PlanError::DuplicatePuncture(..) => ExitCode::InvalidWorld,
        PlanError::Shape { .. } | PlanError::NonFinite | PlanError::Collision(..) | PlanError::AtPuncture { .. } => {
            ExitCode::InvalidConfiguration
        }
        _ => ExitCode::PlannerError,
    }
}

pub(crate) fn transport_error_code(e: &TransportError) -> ExitCode {
    match e {
        TransportError::Collar(_) => ExitCode::InvalidWorld,
        TransportError::Puncture(_) => ExitCode::PlannerError,
        TransportError::Plan(p) => plan_error_code(p),
        TransportError::World(_) | TransportError::InvalidEndpoint { .. } => ExitCode::InvalidConfiguration,
        TransportError::Tc(_) | TransportError::JoinDrift(_) => ExitCode::PlannerError,
    }
}

fn build_world(spec: &WorldSpec) -> Result<SphereWorld64, Failure> {
    let invalid = |msg: String| Failure::new(ExitCode::InvalidWorld, msg);
    let obstacles = spec
        .obstacles
        .iter()
        .map(|o| Obstacle::new(Point::new(o.center.clone()), o.radius))
        .collect();
    let world = SphereWorld64::new(spec.n, spec.r0, obstacles);
    world.validate().map_err(|violations| {
        invalid(violations.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))
    })?;
    Ok(world)
}

fn build_engine(scenario: &Scenario, mode: Mode) -> Result<Engine, Failure> {
    match (&scenario.world, &scenario.euclidean) {
        (Some(spec), None) => {
            let world = build_world(spec)?;
            let fraction = scenario.collar_width_fraction.unwrap_or(DEFAULT_WIDTH_FRACTION);
            let planner = TransportedPlanner64::new(&world, scenario.k, mode, fraction).map_err(|e| {
                let code = match &e {
                    TransportError::Collar(CollarError::InvalidWorld(_)) => ExitCode::InvalidWorld,
                    other => transport_error_code(other),
                };
                Failure::new(code, e.to_string())
            })?;
            Ok(Engine::World(planner))
        }
        (None, Some(spec)) => {
            if spec.n < 2 {
                return Err(Failure::new(ExitCode::InvalidWorld, format!("dimension {} is below 2", spec.n)));
            }
            let punctures = spec.punctures.iter().map(|q| Point::new(q.clone())).collect();
            let planner = Planner64::punctured(spec.n, scenario.k, punctures, mode)
                .map_err(|e| Failure::new(plan_error_code(&e), e.to_string()))?;
            Ok(Engine::Euclidean(planner))
        }
        _ => Err(Failure::new(ExitCode::Usage, "scenario needs exactly one of \"world\" and \"euclidean\"")),
    }
}

fn given_configuration(
    engine: &Engine,
    which: &str,
    points: &[Vec<f64>],
) -> Result<Configuration64, Failure> {
    let invalid = |msg: String| Failure::new(ExitCode::InvalidConfiguration, format!("{which}: {msg}"));
    if points.len() != engine.k() {
        return Err(invalid(format!("expected {} robots, got {}", engine.k(), points.len())));
    }
    if let Some(i) = points.iter().position(|p| p.len() != engine.dim()) {
        return Err(invalid(format!("robot {i} has dimension {}", points[i].len())));
    }
    if points.iter().flatten().any(|x| !x.is_finite()) {
        return Err(invalid("non-finite coordinate".into()));
    }
    let c = Configuration64::from_f64(points).map_err(|e| invalid(e.to_string()))?;
    match engine {
        Engine::World(p) => {
            for (i, q) in c.points().iter().enumerate() {
                if !p.world().contains(q).map_err(|e| invalid(e.to_string()))? {
                    return Err(invalid(format!("robot {i} is outside the free space")));
                }
            }
        }
        Engine::Euclidean(p) => {
            for (i, q) in c.points().iter().enumerate() {
                if let Some(j) = p.punctures().iter().position(|x| x == q) {
                    return Err(invalid(format!("robot {i} sits on puncture {j}")));
                }
            }
        }
    }
    Ok(c)
}

/// Half-width of the cube random Euclidean endpoints are drawn from.
fn euclidean_extent(punctures: &[Point64]) -> f64 {
    punctures
        .iter()
        .flat_map(|q| q.coords().iter().map(|x| x.abs()))
        .fold(0.0, f64::max)
        + 2.0
}

fn random_configuration(engine: &Engine, rng: &mut ChaCha8Rng) -> Configuration64 {
    match engine {
        Engine::World(p) => free_configuration(rng, p.world(), p.inner().k(), RANDOM_BOUNDARY_FRACTION),
        Engine::Euclidean(p) => {
            let extent = euclidean_extent(p.punctures());
            euclidean_configuration(rng, p.dim(), p.k(), extent, p.punctures())
        }
    }
}

/// Builds the planner and endpoints. Missing endpoints are drawn from the
/// (possibly overridden) seed: start first, then goal.
pub fn prepare(scenario: &Scenario, overrides: Overrides) -> Result<Prepared, Failure> {
    let mode = match overrides.mode {
        Some(m) => m,
        None => scenario.mode()?,
    };
    let seed = overrides.seed.unwrap_or(scenario.seed);
    if scenario.k == 0 {
        return Err(Failure::new(ExitCode::InvalidConfiguration, "k must be at least 1"));
    }
    let engine = build_engine(scenario, mode)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = match &scenario.start {
        Some(points) => given_configuration(&engine, "start", points)?,
        None => random_configuration(&engine, &mut rng),
    };
    let goal = match &scenario.goal {
        Some(points) => given_configuration(&engine, "goal", points)?,
        None => random_configuration(&engine, &mut rng),
    };
    let samples_per_segment =
        scenario.samples_per_segment.unwrap_or(sphereworld::path::DEFAULT_SAMPLES_PER_SEGMENT);
    if samples_per_segment < 2 {
        return Err(Failure::new(ExitCode::Usage, "samples_per_segment must be at least 2"));
    }
    Ok(Prepared { seed, samples_per_segment, engine, start, goal })
}
