//! Dimension-generic points and the handful of vector operations the maps need.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Index;

use crate::scalar::Real;

/// A point of `R^n`; the dimension is carried at runtime.
#[derive(Clone, PartialEq, Default)]
pub struct Point<T> {
    coords: Vec<T>,
}

impl<T: Real> Point<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Point { coords }
    }

    pub fn origin(dim: usize) -> Self {
        Point { coords: vec![T::zero(); dim] }
    }

    /// Basis vector `e_axis` scaled by `len`.
    pub fn axis(dim: usize, axis: usize, len: T) -> Self {
        let mut p = Self::origin(dim);
        p.coords[axis] = len;
        p
    }

    pub fn from_f64(coords: &[f64]) -> Self {
        Point { coords: coords.iter().map(|&c| T::lit(c)).collect() }
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.coords.iter().map(|c| c.as_f64()).collect()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    #[inline]
    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    #[inline]
    pub fn coords_mut(&mut self) -> &mut [T] {
        &mut self.coords
    }

    pub fn into_coords(self) -> Vec<T> {
        self.coords
    }

    pub fn is_finite(&self) -> bool {
        self.coords.iter().all(|c| c.is_finite())
    }

    pub fn dot(&self, other: &Self) -> T {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords.iter().zip(&other.coords).map(|(&a, &b)| a * b).sum()
    }

    pub fn norm_squared(&self) -> T {
        self.dot(self)
    }

    pub fn norm(&self) -> T {
        self.norm_squared().sqrt()
    }

    pub fn distance(&self, other: &Self) -> T {
        debug_assert_eq!(self.dim(), other.dim());
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| (a - b) * (a - b))
            .sum::<T>()
            .sqrt()
    }

    /// Largest absolute coordinate difference.
    pub fn sup_distance(&self, other: &Self) -> T {
        self.coords
            .iter()
            .zip(&other.coords)
            .fold(T::zero(), |m, (&a, &b)| m.max((a - b).abs()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Point { coords: self.coords.iter().zip(&other.coords).map(|(&a, &b)| a - b).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        Point { coords: self.coords.iter().zip(&other.coords).map(|(&a, &b)| a + b).collect() }
    }

    pub fn scale(&self, s: T) -> Self {
        Point { coords: self.coords.iter().map(|&a| a * s).collect() }
    }

    /// `center + (self - center) * s`.
    pub fn scale_about(&self, center: &Self, s: T) -> Self {
        Point {
            coords: self
                .coords
                .iter()
                .zip(&center.coords)
                .map(|(&a, &c)| c + (a - c) * s)
                .collect(),
        }
    }

    /// `(1 - tau) * self + tau * other`; exact at both `tau = 0` and `tau = 1`.
    pub fn lerp(&self, other: &Self, tau: T) -> Self {
        let one_minus = T::one() - tau;
        Point {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| one_minus * a + tau * b)
                .collect(),
        }
    }

    /// Lexicographic comparison of coordinate vectors. NaN compares equal.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.coords.iter().zip(&other.coords) {
            match a.partial_cmp(b) {
                Some(Ordering::Equal) | None => continue,
                Some(ord) => return ord,
            }
        }
        self.dim().cmp(&other.dim())
    }
}

impl<T> Index<usize> for Point<T> {
    type Output = T;

    fn index(&self, i: usize) -> &T {
        &self.coords[i]
    }
}

impl<T: fmt::Debug> fmt::Debug for Point<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coords.iter()).finish()
    }
}

impl<T: Real> From<Vec<T>> for Point<T> {
    fn from(coords: Vec<T>) -> Self {
        Point::new(coords)
    }
}

/// True if the tuple is strictly increasing.
pub fn is_strictly_increasing<T: PartialOrd>(values: &[T]) -> bool {
    values.windows(2).all(|w| w[0] < w[1])
}

/// Componentwise convex combination of two equal-length tuples.
pub fn lerp_tuple<T: Real>(a: &[T], b: &[T], tau: T) -> Vec<T> {
    let one_minus = T::one() - tau;
    a.iter().zip(b).map(|(&x, &y)| one_minus * x + tau * y).collect()
}
