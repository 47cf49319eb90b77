//! Radial collars of the boundary spheres and the maps built from them.
//!
//! Each boundary sphere `S` gets a chart `h_S : S x (-1, 1] -> shell` that is
//! affine in the radial coordinate and sends `t = 1` to the sphere itself;
//! decreasing `t` moves into the interior of the free space.
//!
//! * outer sphere: `h(x * r0, t) = x * (r0 - w0 (1 - t))`
//! * obstacle `i`: `h(x_i + r_i x, t) = x_i + x (r_i + w_i (1 - t))`
//!
//! The core region `t <= 0` (plus everything outside the shells) is left fixed
//! by [`CollarAtlas::retract`] and [`CollarAtlas::isotopy`]; on the active part
//! `0 <= t <= 1` they rescale the collar parameter by `1/2` and
//! `(1 + s) / 2` respectively. Both maps are injective for every `s`, which is
//! what makes the configuration-level liftings stay collision free.

use thiserror::Error;

use crate::configuration::Configuration;
use crate::geometry::Point;
use crate::scalar::Real;
use crate::world::{SphereId, SphereWorld, Violation, WorldError};

/// Default collar width as a fraction of the world's minimum gap.
pub const DEFAULT_WIDTH_FRACTION: f64 = 0.2;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum CollarError {
    #[error("world is not a valid sphere world: {0:?}")]
    InvalidWorld(Vec<Violation>),
    #[error("collar width for the {0} sphere is not a positive finite number")]
    NonPositiveWidth(SphereId),
    #[error("expected {expected} obstacle widths, got {found}")]
    WidthCount { expected: usize, found: usize },
    #[error("outer collar of width {0} leaves no interior core")]
    OuterCollarTooWide(f64),
    #[error("collar shell of obstacle {0} reaches the outer collar")]
    ShellOutsideCore(usize),
    #[error("collar shells of obstacles {0} and {1} intersect")]
    ShellsOverlap(usize, usize),
    #[error("isotopy parameter {0} outside [0, 1]")]
    ParameterOutOfRange(f64),
    #[error(transparent)]
    Point(#[from] WorldError),
}

/// Chart coordinates `(foot, t)` of a point in an active collar region.
#[derive(Clone, Debug, PartialEq)]
pub struct CollarCoords<T> {
    pub sphere: SphereId,
    pub foot: Point<T>,
    pub t: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CollarAtlas<T> {
    world: SphereWorld<T>,
    outer_width: T,
    obstacle_widths: Vec<T>,
}

/// Radial position of a point inside one chart.
struct ChartHit<T> {
    sphere: SphereId,
    /// distance from the chart center (origin for the outer sphere)
    dist: T,
    t: T,
}

impl<T: Real> CollarAtlas<T> {
    /// Widths `w0 = w_i = DEFAULT_WIDTH_FRACTION * min_gap`.
    pub fn with_default_widths(world: &SphereWorld<T>) -> Result<Self, CollarError> {
        Self::with_fraction(world, T::lit(DEFAULT_WIDTH_FRACTION))
    }

    /// Uniform widths `fraction * min_gap`.
    pub fn with_fraction(world: &SphereWorld<T>, fraction: T) -> Result<Self, CollarError> {
        world.validate().map_err(CollarError::InvalidWorld)?;
        let w = fraction * world.min_gap();
        Self::with_widths(world, w, vec![w; world.obstacle_count()])
    }

    pub fn with_widths(
        world: &SphereWorld<T>,
        outer_width: T,
        obstacle_widths: Vec<T>,
    ) -> Result<Self, CollarError> {
        world.validate().map_err(CollarError::InvalidWorld)?;
        let m = world.obstacle_count();
        if obstacle_widths.len() != m {
            return Err(CollarError::WidthCount { expected: m, found: obstacle_widths.len() });
        }
        let positive = |w: T| w.is_finite() && w > T::zero();
        if !positive(outer_width) {
            return Err(CollarError::NonPositiveWidth(SphereId::Outer));
        }
        if let Some(i) = obstacle_widths.iter().position(|&w| !positive(w)) {
            return Err(CollarError::NonPositiveWidth(SphereId::Obstacle(i)));
        }
        let two = T::two();
        let core_radius = world.work_radius() - two * outer_width;
        if !(core_radius > T::zero()) {
            return Err(CollarError::OuterCollarTooWide(outer_width.as_f64()));
        }
        let obs = world.obstacles();
        for (i, ob) in obs.iter().enumerate() {
            if !(ob.center.norm() + ob.radius + two * obstacle_widths[i] < core_radius) {
                return Err(CollarError::ShellOutsideCore(i));
            }
            for j in (i + 1)..m {
                let reach_i = ob.radius + two * obstacle_widths[i];
                let reach_j = obs[j].radius + two * obstacle_widths[j];
                if !(ob.center.distance(&obs[j].center) > reach_i + reach_j) {
                    return Err(CollarError::ShellsOverlap(i, j));
                }
            }
        }
        Ok(CollarAtlas { world: world.clone(), outer_width, obstacle_widths })
    }

    pub fn world(&self) -> &SphereWorld<T> {
        &self.world
    }

    pub fn outer_width(&self) -> T {
        self.outer_width
    }

    pub fn obstacle_widths(&self) -> &[T] {
        &self.obstacle_widths
    }

    pub fn width(&self, sphere: SphereId) -> T {
        match sphere {
            SphereId::Outer => self.outer_width,
            SphereId::Obstacle(i) => self.obstacle_widths[i],
        }
    }

    pub fn min_width(&self) -> T {
        self.obstacle_widths.iter().copied().fold(self.outer_width, T::min)
    }

    /// Outer radius of each obstacle's full shell, `r_i + 2 w_i`.
    pub fn shell_radii(&self) -> Vec<T> {
        self.world
            .obstacles()
            .iter()
            .zip(&self.obstacle_widths)
            .map(|(ob, &w)| ob.radius + T::two() * w)
            .collect()
    }

    /// `h(foot, t)` for a foot point on the given sphere.
    pub fn chart_point(&self, sphere: SphereId, foot: &Point<T>, t: T) -> Point<T> {
        let w = self.width(sphere);
        match sphere {
            SphereId::Outer => {
                let r0 = self.world.work_radius();
                foot.scale((r0 - w * (T::one() - t)) / r0)
            }
            SphereId::Obstacle(i) => {
                let ob = &self.world.obstacles()[i];
                foot.scale_about(&ob.center, (ob.radius + w * (T::one() - t)) / ob.radius)
            }
        }
    }

    fn check_member(&self, y: &Point<T>) -> Result<(), CollarError> {
        if !self.world.contains(y)? {
            return Err(WorldError::OutsideFreeSpace.into());
        }
        Ok(())
    }

    /// The active chart (`t > 0`) containing `y`, if any. Assumes membership.
    fn locate(&self, y: &Point<T>) -> Option<ChartHit<T>> {
        let r0 = self.world.work_radius();
        let rho = y.norm();
        if rho > r0 - self.outer_width {
            let t = T::one() - (r0 - rho) / self.outer_width;
            return Some(ChartHit { sphere: SphereId::Outer, dist: rho, t });
        }
        for (i, (ob, &w)) in self.world.obstacles().iter().zip(&self.obstacle_widths).enumerate() {
            let d = y.distance(&ob.center);
            if d < ob.radius + w {
                let t = T::one() - (d - ob.radius) / w;
                return Some(ChartHit { sphere: SphereId::Obstacle(i), dist: d, t });
            }
        }
        None
    }

    /// Moves `y` along its radial chart line to collar parameter `t_new`.
    fn reposition(&self, y: &Point<T>, hit: &ChartHit<T>, t_new: T) -> Point<T> {
        let w = self.width(hit.sphere);
        match hit.sphere {
            SphereId::Outer => {
                let r0 = self.world.work_radius();
                y.scale((r0 - w * (T::one() - t_new)) / hit.dist)
            }
            SphereId::Obstacle(i) => {
                let ob = &self.world.obstacles()[i];
                y.scale_about(&ob.center, (ob.radius + w * (T::one() - t_new)) / hit.dist)
            }
        }
    }

    /// Collar coordinates of `y`, or `None` when `y` lies in the fixed core
    /// (`t <= 0` or outside every shell).
    pub fn collar_coords(&self, y: &Point<T>) -> Result<Option<CollarCoords<T>>, CollarError> {
        self.check_member(y)?;
        Ok(self.locate(y).map(|hit| {
            let foot = match hit.sphere {
                SphereId::Outer => y.scale(self.world.work_radius() / hit.dist),
                SphereId::Obstacle(i) => {
                    let ob = &self.world.obstacles()[i];
                    y.scale_about(&ob.center, ob.radius / hit.dist)
                }
            };
            CollarCoords { sphere: hit.sphere, foot, t: hit.t }
        }))
    }

    /// The retraction `p`: `h(x, t) -> h(x, t / 2)` on the active collar,
    /// identity elsewhere. The image lies in the interior.
    pub fn retract(&self, y: &Point<T>) -> Result<Point<T>, CollarError> {
        self.check_member(y)?;
        Ok(match self.locate(y) {
            Some(hit) => {
                let t_new = T::half() * hit.t;
                self.reposition(y, &hit, t_new)
            }
            None => y.clone(),
        })
    }

    /// The isotopy `H(y, s)`: `h(x, t) -> h(x, (1/2 + s/2) t)` on the active
    /// collar, identity elsewhere. `H(., 1)` is the identity, `H(., 0)` is
    /// [`CollarAtlas::retract`].
    pub fn isotopy(&self, y: &Point<T>, s: T) -> Result<Point<T>, CollarError> {
        if !(s >= T::zero() && s <= T::one()) {
            return Err(CollarError::ParameterOutOfRange(s.as_f64()));
        }
        self.check_member(y)?;
        Ok(match self.locate(y) {
            Some(hit) => {
                let t_new = (T::half() + s * T::half()) * hit.t;
                self.reposition(y, &hit, t_new)
            }
            None => y.clone(),
        })
    }

    /// `F(p, k)`.
    pub fn config_retract(&self, c: &Configuration<T>) -> Result<Configuration<T>, CollarError> {
        c.map_points(|y| self.retract(y))
    }

    /// `F(H, k)` at parameter `s`.
    pub fn config_isotopy(&self, c: &Configuration<T>, s: T) -> Result<Configuration<T>, CollarError> {
        if !(s >= T::zero() && s <= T::one()) {
            return Err(CollarError::ParameterOutOfRange(s.as_f64()));
        }
        c.map_points(|y| self.isotopy(y, s))
    }
}
