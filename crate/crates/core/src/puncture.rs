//! A closed-form homeomorphism from the interior of a sphere world onto
//! Euclidean space minus a finite puncture set.
//!
//! `phi = expand ∘ collapse`:
//!
//! * `collapse` shrinks each obstacle's influence shell `r_i < d <= R_i` onto
//!   the punctured ball `0 < d <= R_i` with the affine profile
//!   `g_i(d) = R_i (d - r_i) / (R_i - r_i)`, identity outside the shells;
//! * `expand` blows the open workspace ball up onto `R^n` with the radial
//!   profile `rho -> rho * r0 / (r0 - rho)`.
//!
//! Punctures are the images of the obstacle centres, `q_i = expand(x_i)`.

use thiserror::Error;

use crate::collar::CollarAtlas;
use crate::configuration::Configuration;
use crate::geometry::Point;
use crate::scalar::Real;
use crate::world::{SphereWorld, Violation, WorldError};

/// Inputs closer than `MIN_CLEARANCE * r0` to the boundary are refused by
/// [`PunctureMap::forward`].
pub const MIN_CLEARANCE: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum PunctureError {
    #[error("world is not a valid sphere world: {0:?}")]
    InvalidWorld(Vec<Violation>),
    #[error("expected {expected} influence radii, got {found}")]
    RadiusCount { expected: usize, found: usize },
    #[error("influence radius of obstacle {0} must exceed the obstacle radius")]
    RadiusTooSmall(usize),
    #[error("influence shell of obstacle {0} leaves the workspace")]
    ShellOutsideWorkspace(usize),
    #[error("influence shells of obstacles {0} and {1} intersect")]
    ShellsOverlap(usize, usize),
    #[error("point is not in the open interior of the free space")]
    NotInterior,
    #[error("point is within {0:e} of the boundary")]
    TooCloseToBoundary(f64),
    #[error("point coincides with puncture {0}")]
    AtPuncture(usize),
    #[error("point has non-finite coordinates")]
    NonFinite,
    #[error(transparent)]
    Point(#[from] WorldError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PunctureMap<T> {
    world: SphereWorld<T>,
    influence_radii: Vec<T>,
    punctures: Vec<Point<T>>,
}

impl<T: Real> PunctureMap<T> {
    pub fn new(world: &SphereWorld<T>, influence_radii: Vec<T>) -> Result<Self, PunctureError> {
        world.validate().map_err(PunctureError::InvalidWorld)?;
        let obs = world.obstacles();
        if influence_radii.len() != obs.len() {
            return Err(PunctureError::RadiusCount {
                expected: obs.len(),
                found: influence_radii.len(),
            });
        }
        for (i, ob) in obs.iter().enumerate() {
            let big = influence_radii[i];
            if !(big.is_finite() && big > ob.radius) {
                return Err(PunctureError::RadiusTooSmall(i));
            }
            if !(ob.center.norm() + big < world.work_radius()) {
                return Err(PunctureError::ShellOutsideWorkspace(i));
            }
            for j in (i + 1)..obs.len() {
                if !(ob.center.distance(&obs[j].center) > big + influence_radii[j]) {
                    return Err(PunctureError::ShellsOverlap(i, j));
                }
            }
        }
        let r0 = world.work_radius();
        let punctures = obs.iter().map(|ob| expand(&ob.center, r0)).collect();
        Ok(PunctureMap { world: world.clone(), influence_radii, punctures })
    }

    /// Influence radii `R_i = r_i + 2 w_i` taken from a collar atlas.
    pub fn from_atlas(atlas: &CollarAtlas<T>) -> Result<Self, PunctureError> {
        Self::new(atlas.world(), atlas.shell_radii())
    }

    pub fn world(&self) -> &SphereWorld<T> {
        &self.world
    }

    pub fn influence_radii(&self) -> &[T] {
        &self.influence_radii
    }

    /// The puncture set `Q_m`.
    pub fn punctures(&self) -> &[Point<T>] {
        &self.punctures
    }

    /// `phi`.
    pub fn forward(&self, p: &Point<T>) -> Result<Point<T>, PunctureError> {
        if !self.world.contains_interior(p)? {
            return Err(PunctureError::NotInterior);
        }
        let clearance = self.world.clearance_unchecked(p);
        let floor = T::lit(MIN_CLEARANCE) * self.world.work_radius();
        if clearance < floor {
            return Err(PunctureError::TooCloseToBoundary(clearance.as_f64()));
        }
        Ok(expand(&self.collapse(p), self.world.work_radius()))
    }

    /// `phi^{-1}`.
    pub fn inverse(&self, y: &Point<T>) -> Result<Point<T>, PunctureError> {
        if y.dim() != self.world.dim() {
            return Err(WorldError::DimensionMismatch { expected: self.world.dim(), found: y.dim() }
                .into());
        }
        if !y.is_finite() {
            return Err(PunctureError::NonFinite);
        }
        if let Some(i) = self.punctures.iter().position(|q| q == y) {
            return Err(PunctureError::AtPuncture(i));
        }
        let z = contract(y, self.world.work_radius());
        self.uncollapse(&z)
    }

    pub fn config_forward(&self, c: &Configuration<T>) -> Result<Configuration<T>, PunctureError> {
        c.map_points(|p| self.forward(p))
    }

    pub fn config_inverse(&self, c: &Configuration<T>) -> Result<Configuration<T>, PunctureError> {
        c.map_points(|y| self.inverse(y))
    }

    /// Obstacle collapse; identity outside the influence shells.
    pub fn collapse(&self, p: &Point<T>) -> Point<T> {
        for (ob, &big) in self.world.obstacles().iter().zip(&self.influence_radii) {
            let d = p.distance(&ob.center);
            if d <= big {
                let g = big * (d - ob.radius) / (big - ob.radius);
                return p.scale_about(&ob.center, g / d);
            }
        }
        p.clone()
    }

    fn uncollapse(&self, z: &Point<T>) -> Result<Point<T>, PunctureError> {
        for (i, (ob, &big)) in self.world.obstacles().iter().zip(&self.influence_radii).enumerate() {
            let d = z.distance(&ob.center);
            if d <= big {
                if d == T::zero() {
                    return Err(PunctureError::AtPuncture(i));
                }
                let g_inv = ob.radius + d * (big - ob.radius) / big;
                return Ok(z.scale_about(&ob.center, g_inv / d));
            }
        }
        Ok(z.clone())
    }
}

/// Open ball of radius `r0` onto `R^n`.
pub fn expand<T: Real>(x: &Point<T>, r0: T) -> Point<T> {
    let rho = x.norm();
    x.scale(r0 / (r0 - rho))
}

/// Inverse of [`expand`].
pub fn contract<T: Real>(y: &Point<T>, r0: T) -> Point<T> {
    let rho = y.norm();
    y.scale(r0 / (r0 + rho))
}
