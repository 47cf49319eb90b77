//! Sphere worlds: a closed ball of radius `r0` centred at the origin with `m`
//! open ball obstacles removed.
//!
//! Boundary spheres belong to the free space. Every strict/weak inequality in
//! this module follows from that: obstacles are *open* balls, the workspace is
//! a *closed* ball.

use std::fmt;

use thiserror::Error;

use crate::geometry::Point;
use crate::scalar::Real;

/// Relative boundary tolerance: `tau_b = BOUNDARY_TOLERANCE * r0`.
pub const BOUNDARY_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct Obstacle<T> {
    pub center: Point<T>,
    pub radius: T,
}

impl<T: Real> Obstacle<T> {
    pub fn new(center: Point<T>, radius: T) -> Self {
        Obstacle { center, radius }
    }
}

/// Identifies one boundary sphere of a world.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SphereId {
    Outer,
    Obstacle(usize),
}

impl fmt::Display for SphereId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SphereId::Outer => write!(f, "outer"),
            SphereId::Obstacle(i) => write!(f, "obstacle {i}"),
        }
    }
}

/// One failed sphere-world precondition.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("dimension {dim} is below 2")]
    DimensionTooSmall { dim: usize },
    #[error("workspace radius is not a positive finite number")]
    NonPositiveWorkRadius,
    #[error("obstacle {index} has dimension {found}, expected {expected}")]
    ObstacleDimension { index: usize, expected: usize, found: usize },
    #[error("obstacle {index} has a non-finite center or radius")]
    NonFiniteObstacle { index: usize },
    #[error("obstacle {index} radius is not positive")]
    NonPositiveObstacleRadius { index: usize },
    #[error("obstacle {index}: closure outside workspace")]
    ClosureOutsideWorkspace { index: usize },
    #[error("obstacles {first} and {second} overlap")]
    ObstaclesOverlap { first: usize, second: usize },
}

#[derive(Clone, Debug, PartialEq, Error)]
pub enum WorldError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("point lies outside the free space")]
    OutsideFreeSpace,
}

/// Where a point sits relative to the free space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    Interior,
    Boundary(SphereId),
    Outside,
}

/// The free space `X_{n,m}`. Construction does not validate; call
/// [`SphereWorld::validate`] or use [`SphereWorld::validated`].
#[derive(Clone, Debug, PartialEq)]
pub struct SphereWorld<T> {
    dim: usize,
    work_radius: T,
    obstacles: Vec<Obstacle<T>>,
}

impl<T: Real> SphereWorld<T> {
    pub fn new(dim: usize, work_radius: T, obstacles: Vec<Obstacle<T>>) -> Self {
        SphereWorld { dim, work_radius, obstacles }
    }

    /// A world with no obstacles: the closed disk/ball of radius `r0`.
    pub fn disk(dim: usize, work_radius: T) -> Self {
        Self::new(dim, work_radius, Vec::new())
    }

    pub fn validated(
        dim: usize,
        work_radius: T,
        obstacles: Vec<Obstacle<T>>,
    ) -> Result<Self, Vec<Violation>> {
        let world = Self::new(dim, work_radius, obstacles);
        world.validate()?;
        Ok(world)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn work_radius(&self) -> T {
        self.work_radius
    }

    #[inline]
    pub fn obstacles(&self) -> &[Obstacle<T>] {
        &self.obstacles
    }

    #[inline]
    pub fn obstacle_count(&self) -> usize {
        self.obstacles.len()
    }

    pub fn boundary_tolerance(&self) -> T {
        T::lit(BOUNDARY_TOLERANCE) * self.work_radius
    }

    /// Checks every sphere-world inequality; returns all violations found.
    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut violations = Vec::new();
        if self.dim < 2 {
            violations.push(Violation::DimensionTooSmall { dim: self.dim });
        }
        let r0 = self.work_radius;
        if !(r0.is_finite() && r0 > T::zero()) {
            violations.push(Violation::NonPositiveWorkRadius);
        }
        let mut well_formed = vec![false; self.obstacles.len()];
        for (index, ob) in self.obstacles.iter().enumerate() {
            if ob.center.dim() != self.dim {
                violations.push(Violation::ObstacleDimension {
                    index,
                    expected: self.dim,
                    found: ob.center.dim(),
                });
                continue;
            }
            if !(ob.center.is_finite() && ob.radius.is_finite()) {
                violations.push(Violation::NonFiniteObstacle { index });
                continue;
            }
            if ob.radius <= T::zero() {
                violations.push(Violation::NonPositiveObstacleRadius { index });
                continue;
            }
            well_formed[index] = true;
            if !(ob.center.norm() + ob.radius < r0) {
                violations.push(Violation::ClosureOutsideWorkspace { index });
            }
        }
        for i in 0..self.obstacles.len() {
            for j in (i + 1)..self.obstacles.len() {
                if !(well_formed[i] && well_formed[j]) {
                    continue;
                }
                let (a, b) = (&self.obstacles[i], &self.obstacles[j]);
                if !(a.center.distance(&b.center) > a.radius + b.radius) {
                    violations.push(Violation::ObstaclesOverlap { first: i, second: j });
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    fn check_dim(&self, p: &Point<T>) -> Result<(), WorldError> {
        if p.dim() != self.dim {
            return Err(WorldError::DimensionMismatch { expected: self.dim, found: p.dim() });
        }
        Ok(())
    }

    fn contains_unchecked(&self, p: &Point<T>) -> bool {
        p.is_finite()
            && p.norm() <= self.work_radius
            && self.obstacles.iter().all(|ob| p.distance(&ob.center) >= ob.radius)
    }

    /// Membership in the closed free space (boundary spheres included).
    pub fn contains(&self, p: &Point<T>) -> Result<bool, WorldError> {
        self.check_dim(p)?;
        Ok(self.contains_unchecked(p))
    }

    /// Membership in the open interior.
    pub fn contains_interior(&self, p: &Point<T>) -> Result<bool, WorldError> {
        self.check_dim(p)?;
        Ok(p.is_finite()
            && p.norm() < self.work_radius
            && self.obstacles.iter().all(|ob| p.distance(&ob.center) > ob.radius))
    }

    /// Interior / boundary / outside, with boundary detection at `tau_b`.
    /// When two spheres are within tolerance the closer one is reported.
    pub fn classify(&self, p: &Point<T>) -> Result<Region, WorldError> {
        self.check_dim(p)?;
        let tol = self.boundary_tolerance();
        let mut best: Option<(T, SphereId)> = None;
        let mut consider = |gap: T, id: SphereId| {
            if gap <= tol && best.is_none_or(|(g, _)| gap < g) {
                best = Some((gap, id));
            }
        };
        consider((p.norm() - self.work_radius).abs(), SphereId::Outer);
        for (i, ob) in self.obstacles.iter().enumerate() {
            consider((p.distance(&ob.center) - ob.radius).abs(), SphereId::Obstacle(i));
        }
        Ok(match best {
            Some((_, id)) => Region::Boundary(id),
            None if self.contains_unchecked(p) => Region::Interior,
            None => Region::Outside,
        })
    }

    /// Distance from `p` to the nearest boundary sphere; zero exactly on the
    /// boundary.
    pub fn boundary_clearance(&self, p: &Point<T>) -> Result<T, WorldError> {
        self.check_dim(p)?;
        if !self.contains_unchecked(p) {
            return Err(WorldError::OutsideFreeSpace);
        }
        Ok(self.clearance_unchecked(p))
    }

    /// Signed clearance without the membership check (negative outside).
    pub fn clearance_unchecked(&self, p: &Point<T>) -> T {
        self.obstacles
            .iter()
            .map(|ob| p.distance(&ob.center) - ob.radius)
            .fold(self.work_radius - p.norm(), T::min)
    }

    /// The smallest slack among the sphere-world inequalities:
    /// `min(r0 - max_i(|x_i| + r_i), min_{i != j}(|x_i - x_j| - r_i - r_j))`,
    /// or `r0` for an obstacle-free world.
    pub fn min_gap(&self) -> T {
        let mut gap = self.work_radius;
        if self.obstacles.is_empty() {
            return gap;
        }
        for (i, a) in self.obstacles.iter().enumerate() {
            gap = gap.min(self.work_radius - (a.center.norm() + a.radius));
            for b in &self.obstacles[i + 1..] {
                gap = gap.min(a.center.distance(&b.center) - a.radius - b.radius);
            }
        }
        gap
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[f64]) -> Point<f64> {
        Point::new(c.to_vec())
    }

    fn ob(c: &[f64], r: f64) -> Obstacle<f64> {
        Obstacle::new(p(c), r)
    }

    #[test]
    fn empty_world_is_valid() {
        assert!(SphereWorld::disk(2, 10.0).validate().is_ok());
    }

    #[test]
    fn closure_outside_is_reported() {
        let w = SphereWorld::new(2, 10.0, vec![ob(&[9.0, 0.0], 2.0)]);
        assert_eq!(w.validate(), Err(vec![Violation::ClosureOutsideWorkspace { index: 0 }]));
        assert!(Violation::ClosureOutsideWorkspace { index: 0 }
            .to_string()
            .contains("closure outside workspace"));
    }

    #[test]
    fn two_separate_obstacles_are_valid() {
        let w = SphereWorld::new(2, 10.0, vec![ob(&[-3.0, 0.0], 1.0), ob(&[3.0, 0.0], 1.0)]);
        assert!(w.validate().is_ok());
    }

    #[test]
    fn overlap_and_touching_are_rejected() {
        let w = SphereWorld::new(2, 10.0, vec![ob(&[-1.0, 0.0], 1.0), ob(&[1.0, 0.0], 1.0)]);
        assert_eq!(w.validate(), Err(vec![Violation::ObstaclesOverlap { first: 0, second: 1 }]));
    }

    #[test]
    fn malformed_inputs() {
        let w = SphereWorld::new(1, -1.0, vec![ob(&[0.0, 0.0], 0.0)]);
        let v = w.validate().unwrap_err();
        assert!(v.contains(&Violation::DimensionTooSmall { dim: 1 }));
        assert!(v.contains(&Violation::NonPositiveWorkRadius));
        assert!(v.contains(&Violation::ObstacleDimension { index: 0, expected: 1, found: 2 }));
        let w = SphereWorld::new(2, 10.0, vec![ob(&[0.0, 0.0], -1.0), ob(&[f64::NAN, 0.0], 1.0)]);
        let v = w.validate().unwrap_err();
        assert_eq!(
            v,
            vec![
                Violation::NonPositiveObstacleRadius { index: 0 },
                Violation::NonFiniteObstacle { index: 1 }
            ]
        );
    }

    #[test]
    fn membership() {
        let disk = SphereWorld::disk(2, 10.0);
        assert!(disk.contains(&p(&[0.0, 0.0])).unwrap());
        let w = SphereWorld::new(2, 10.0, vec![ob(&[3.0, 0.0], 1.0)]);
        assert!(!w.contains(&p(&[3.0, 0.0])).unwrap());
        assert!(w.contains(&p(&[4.0, 0.0])).unwrap());
        assert!(!w.contains_interior(&p(&[4.0, 0.0])).unwrap());
        assert!(w.contains(&p(&[10.0, 0.0])).unwrap());
        assert!(!w.contains(&p(&[10.5, 0.0])).unwrap());
        assert_eq!(
            w.contains(&p(&[1.0, 2.0, 3.0])),
            Err(WorldError::DimensionMismatch { expected: 2, found: 3 })
        );
    }

    #[test]
    fn classification() {
        let w = SphereWorld::new(2, 10.0, vec![ob(&[3.0, 0.0], 1.0)]);
        assert_eq!(w.classify(&p(&[10.0, 0.0])).unwrap(), Region::Boundary(SphereId::Outer));
        assert_eq!(w.classify(&p(&[0.0, 0.0])).unwrap(), Region::Interior);
        assert_eq!(w.classify(&p(&[4.0, 0.0])).unwrap(), Region::Boundary(SphereId::Obstacle(0)));
        assert_eq!(w.classify(&p(&[3.5, 0.0])).unwrap(), Region::Outside);
        assert_eq!(w.classify(&p(&[0.0, 11.0])).unwrap(), Region::Outside);
        assert_eq!(
            w.classify(&p(&[0.0, 10.0 - 1e-12])).unwrap(),
            Region::Boundary(SphereId::Outer)
        );
    }

    #[test]
    fn clearance() {
        let disk = SphereWorld::disk(2, 10.0);
        assert_eq!(disk.boundary_clearance(&p(&[0.0, 0.0])).unwrap(), 10.0);
        assert_eq!(disk.boundary_clearance(&p(&[0.0, 10.0])).unwrap(), 0.0);
        let w = SphereWorld::new(2, 10.0, vec![ob(&[3.0, 0.0], 1.0)]);
        assert_eq!(w.boundary_clearance(&p(&[9.0, 0.0])).unwrap(), 1.0);
        assert_eq!(w.boundary_clearance(&p(&[3.2, 0.0])), Err(WorldError::OutsideFreeSpace));
    }

    #[test]
    fn min_gap_rule() {
        assert_eq!(SphereWorld::disk(3, 10.0).min_gap(), 10.0);
        let w = SphereWorld::new(2, 10.0, vec![ob(&[-3.0, 0.0], 1.0), ob(&[3.0, 0.0], 1.0)]);
        assert_eq!(w.min_gap(), 4.0);
    }
}
