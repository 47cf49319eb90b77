//! Collision-free motion planning for `k` labeled point robots in an
//! `n`-dimensional sphere world (a closed ball with `m` open ball obstacles
//! removed).
//!
//! Planning goes through a chain of explicit maps:
//!
//! 1. a radial collar isotopy pushes configurations off the boundary
//!    ([`collar`]);
//! 2. a closed-form homeomorphism sends the interior onto `R^n` minus `m`
//!    punctures ([`puncture`]);
//! 3. a planner with finitely many local rules plans there ([`planner`]);
//! 4. the plan is mapped back and glued to the isotopy ([`transport`]).
//!
//! Rule counts are compared against the topological complexity of the
//! configuration space ([`tc`]).
//!
//! Everything is generic over the scalar type ([`Real`]); `f64` and `f32`
//! aliases are exported below.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod collar;
pub mod configuration;
pub mod geometry;
pub mod path;
pub mod planner;
pub mod puncture;
pub mod sample;
pub mod scalar;
pub mod tc;
pub mod transport;
pub mod validation;
pub mod world;

pub use collar::{CollarAtlas, CollarCoords, CollarError};
pub use configuration::{ConfigError, Configuration, Permutation};
pub use geometry::Point;
pub use path::{PiecewisePath, SamplingOptions, Section, Segment};
pub use planner::{Mode, PlanError, Planner};
pub use puncture::{PunctureError, PunctureMap};
pub use scalar::Real;
pub use tc::{tc_value, TcRow};
pub use transport::{TcReport, TransportError, TransportedPlanner};
pub use validation::{validate_path, TargetSpace, ValidationReport};
pub use world::{Obstacle, Region, SphereId, SphereWorld, Violation, WorldError};

pub type Point64 = Point<f64>;
pub type Obstacle64 = Obstacle<f64>;
pub type SphereWorld64 = SphereWorld<f64>;
pub type Configuration64 = Configuration<f64>;
pub type CollarAtlas64 = CollarAtlas<f64>;
pub type PunctureMap64 = PunctureMap<f64>;
pub type Planner64 = Planner<f64>;
pub type TransportedPlanner64 = TransportedPlanner<f64>;
pub type PiecewisePath64 = PiecewisePath<f64>;

pub type Point32 = Point<f32>;
pub type SphereWorld32 = SphereWorld<f32>;
pub type Configuration32 = Configuration<f32>;
pub type CollarAtlas32 = CollarAtlas<f32>;
pub type PunctureMap32 = PunctureMap<f32>;
pub type Planner32 = Planner<f32>;
