//! Ordered configuration spaces `F(X, k)`: labeled tuples of pairwise-distinct
//! points, the symmetric-group action on labels, and projection onto the
//! first `r` robots.

use thiserror::Error;

use crate::geometry::Point;
use crate::scalar::Real;
use crate::world::{SphereWorld, WorldError};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("a configuration needs at least one point")]
    Empty,
    #[error("point {index} has dimension {found}, expected {expected}")]
    DimensionMismatch { index: usize, expected: usize, found: usize },
    #[error("points {first} and {second} coincide")]
    Collision { first: usize, second: usize },
    #[error("projection size {r} out of range 1..{k}")]
    ProjectionOutOfRange { r: usize, k: usize },
    #[error("permutation size {found} does not match configuration size {expected}")]
    PermutationSize { expected: usize, found: usize },
    #[error("not a bijection on 0..{0}")]
    NotABijection(usize),
}

/// An ordered `k`-tuple of points of equal dimension.
///
/// [`Configuration::new`] enforces exact pairwise distinctness.
/// [`Configuration::from_points`] skips the check; sampled paths and
/// validator inputs are built that way because they may be invalid.
#[derive(Clone, Debug, PartialEq)]
pub struct Configuration<T> {
    points: Vec<Point<T>>,
}

impl<T: Real> Configuration<T> {
    pub fn new(points: Vec<Point<T>>) -> Result<Self, ConfigError> {
        let c = Self::from_points(points);
        c.check_shape()?;
        if let Some((first, second)) = c.first_collision() {
            return Err(ConfigError::Collision { first, second });
        }
        Ok(c)
    }

    pub fn from_points(points: Vec<Point<T>>) -> Self {
        Configuration { points }
    }

    pub fn from_f64(points: &[Vec<f64>]) -> Result<Self, ConfigError> {
        Self::new(points.iter().map(|p| Point::from_f64(p)).collect())
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.points.iter().map(Point::to_f64).collect()
    }

    fn check_shape(&self) -> Result<(), ConfigError> {
        let first = self.points.first().ok_or(ConfigError::Empty)?;
        let expected = first.dim();
        for (index, p) in self.points.iter().enumerate() {
            if p.dim() != expected {
                return Err(ConfigError::DimensionMismatch { index, expected, found: p.dim() });
            }
        }
        Ok(())
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.points.len()
    }

    /// Ambient dimension (0 for an empty, unchecked configuration).
    pub fn dim(&self) -> usize {
        self.points.first().map_or(0, Point::dim)
    }

    #[inline]
    pub fn points(&self) -> &[Point<T>] {
        &self.points
    }

    #[inline]
    pub fn point(&self, i: usize) -> &Point<T> {
        &self.points[i]
    }

    pub fn into_points(self) -> Vec<Point<T>> {
        self.points
    }

    /// First pair `(i, j)` with `i < j` and identical coordinates.
    pub fn first_collision(&self) -> Option<(usize, usize)> {
        for i in 0..self.points.len() {
            for j in (i + 1)..self.points.len() {
                if self.points[i] == self.points[j] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_pairwise_distinct(&self) -> bool {
        self.first_collision().is_none()
    }

    /// Minimum pairwise distance; `+inf` when `k = 1`. Zero when a collision
    /// is present (use [`Configuration::separation`] for the checked form).
    pub fn min_pair_distance(&self) -> T {
        let mut best = T::infinity();
        for i in 0..self.points.len() {
            for j in (i + 1)..self.points.len() {
                best = best.min(self.points[i].distance(&self.points[j]));
            }
        }
        best
    }

    pub fn separation(&self) -> Result<T, ConfigError> {
        if let Some((first, second)) = self.first_collision() {
            return Err(ConfigError::Collision { first, second });
        }
        Ok(self.min_pair_distance())
    }

    /// Membership in `F(X, k)`: every point in `X` and all points distinct.
    pub fn in_free_configuration_space(&self, world: &SphereWorld<T>) -> Result<bool, WorldError> {
        for p in &self.points {
            if !world.contains(p)? {
                return Ok(false);
            }
        }
        Ok(self.is_pairwise_distinct())
    }

    /// Applies `sigma`: the point labeled `i` moves to label `sigma(i)`.
    pub fn permute(&self, sigma: &Permutation) -> Result<Self, ConfigError> {
        if sigma.len() != self.k() {
            return Err(ConfigError::PermutationSize { expected: self.k(), found: sigma.len() });
        }
        let mut slots: Vec<Option<Point<T>>> = vec![None; self.k()];
        for (i, p) in self.points.iter().enumerate() {
            slots[sigma.apply(i)] = Some(p.clone());
        }
        Ok(Configuration { points: slots.into_iter().map(|p| p.expect("bijection")).collect() })
    }

    /// Keeps the first `r` points, `1 <= r < k`.
    pub fn project(&self, r: usize) -> Result<Self, ConfigError> {
        if r == 0 || r >= self.k() {
            return Err(ConfigError::ProjectionOutOfRange { r, k: self.k() });
        }
        Ok(Configuration { points: self.points[..r].to_vec() })
    }

    /// Applies `f` pointwise.
    pub fn map_points<E>(&self, f: impl FnMut(&Point<T>) -> Result<Point<T>, E>) -> Result<Self, E> {
        let points = self.points.iter().map(f).collect::<Result<Vec<_>, E>>()?;
        Ok(Configuration { points })
    }

    /// Pointwise linear interpolation, exact at `tau in {0, 1}`.
    pub fn lerp(&self, other: &Self, tau: T) -> Self {
        Configuration {
            points: self.points.iter().zip(&other.points).map(|(a, b)| a.lerp(b, tau)).collect(),
        }
    }

    /// Largest per-robot Euclidean displacement between two configurations.
    pub fn max_displacement(&self, other: &Self) -> T {
        self.points
            .iter()
            .zip(&other.points)
            .fold(T::zero(), |m, (a, b)| m.max(a.distance(b)))
    }

    /// Sum over robots of Euclidean displacement (the norm used for
    /// perturbation sizes).
    pub fn l1_distance(&self, other: &Self) -> T {
        self.points.iter().zip(&other.points).map(|(a, b)| a.distance(b)).sum()
    }
}

/// A bijection on `{0, .., k-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// `images[i]` is the image of `i`.
    pub fn new(images: Vec<usize>) -> Result<Self, ConfigError> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &j in &images {
            if j >= k || seen[j] {
                return Err(ConfigError::NotABijection(k));
            }
            seen[j] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(k: usize) -> Self {
        Permutation { images: (0..k).collect() }
    }

    /// The transposition of `a` and `b`.
    pub fn swap(k: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..k).collect();
        images.swap(a, b);
        Permutation { images }
    }

    /// `i -> i + 1 mod k`.
    pub fn cycle(k: usize) -> Self {
        Permutation { images: (0..k).map(|i| (i + 1) % k).collect() }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `self ∘ inner`: first `inner`, then `self`.
    pub fn compose(&self, inner: &Permutation) -> Permutation {
        Permutation { images: inner.images.iter().map(|&j| self.images[j]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        Permutation { images }
    }

    pub fn fixes_first(&self, r: usize) -> bool {
        self.images.iter().take(r).enumerate().all(|(i, &j)| i == j)
    }
}
