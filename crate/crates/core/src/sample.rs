//! Seeded random worlds, points and configurations for tests, probes and
//! scenarios without explicit endpoints.

use rand::Rng;

use crate::configuration::Configuration;
use crate::geometry::Point;
use crate::scalar::Real;
use crate::world::{Obstacle, SphereId, SphereWorld};

/// Uniform direction on the unit sphere in `R^n`.
pub fn unit_vector<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize) -> Point<T> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let norm2: f64 = v.iter().map(|x| x * x).sum();
        if norm2 > 1e-4 && norm2 <= 1.0 {
            let norm = norm2.sqrt();
            return Point::new(v.iter().map(|x| T::lit(x / norm)).collect());
        }
    }
}

/// Uniform point in the closed ball of radius `radius` about the origin.
pub fn ball_point<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize, radius: f64) -> Point<T> {
    loop {
        let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-radius..=radius)).collect();
        if v.iter().map(|x| x * x).sum::<f64>() <= radius * radius {
            return Point::new(v.into_iter().map(T::lit).collect());
        }
    }
}

/// A valid world with `m` obstacles of radius `0.05..0.2 r0`, every gap at
/// least `0.05 r0`.
pub fn random_world<T: Real, R: Rng + ?Sized>(rng: &mut R, n: usize, m: usize, r0: f64) -> SphereWorld<T> {
    let margin = 0.05 * r0;
    'restart: loop {
        let mut obstacles: Vec<(Vec<f64>, f64)> = Vec::with_capacity(m);
        let mut attempts = 0;
        while obstacles.len() < m {
            attempts += 1;
            if attempts > 1000 {
                continue 'restart;
            }
            let radius = rng.gen_range(0.05 * r0..0.2 * r0);
            let center: Point<f64> = ball_point(rng, n, r0 - radius - margin);
            let c = center.into_coords();
            let fits = obstacles.iter().all(|(other, r)| {
                let d: f64 = c.iter().zip(other).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
                d - radius - r >= margin
            });
            if fits {
                obstacles.push((c, radius));
            }
        }
        let obstacles = obstacles
            .into_iter()
            .map(|(c, r)| Obstacle::new(Point::new(c.into_iter().map(T::lit).collect()), T::lit(r)))
            .collect();
        return SphereWorld::new(n, T::lit(r0), obstacles);
    }
}

/// A point on the given boundary sphere; retried until the world accepts it.
pub fn boundary_point<T: Real, R: Rng + ?Sized>(rng: &mut R, world: &SphereWorld<T>, sphere: SphereId) -> Point<T> {
    loop {
        let u: Point<T> = unit_vector(rng, world.dim());
        let p = match sphere {
            SphereId::Outer => u.scale(world.work_radius()),
            SphereId::Obstacle(i) => {
                let ob = &world.obstacles()[i];
                ob.center.add(&u.scale(ob.radius))
            }
        };
        if world.contains(&p).unwrap_or(false) {
            return p;
        }
    }
}

/// Uniform point of the free space (interior with probability one).
pub fn free_point<T: Real, R: Rng + ?Sized>(rng: &mut R, world: &SphereWorld<T>) -> Point<T> {
    let r0 = world.work_radius().as_f64();
    loop {
        let p = ball_point(rng, world.dim(), r0);
        if world.contains(&p).unwrap_or(false) {
            return p;
        }
    }
}

/// `k` distinct free points; each robot lands on a random boundary sphere
/// with probability `boundary_fraction`.
pub fn free_configuration<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    world: &SphereWorld<T>,
    k: usize,
    boundary_fraction: f64,
) -> Configuration<T> {
    let spheres = world.obstacle_count() + 1;
    let mut points: Vec<Point<T>> = Vec::with_capacity(k);
    while points.len() < k {
        let p = if rng.gen_bool(boundary_fraction.clamp(0.0, 1.0)) {
            let s = rng.gen_range(0..spheres);
            let sphere = if s == 0 { SphereId::Outer } else { SphereId::Obstacle(s - 1) };
            boundary_point(rng, world, sphere)
        } else {
            free_point(rng, world)
        };
        if !points.contains(&p) {
            points.push(p);
        }
    }
    Configuration::from_points(points)
}

/// `k` distinct points in the cube `[-half_width, half_width]^n` avoiding
/// `punctures`.
pub fn euclidean_configuration<T: Real, R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    k: usize,
    half_width: f64,
    punctures: &[Point<T>],
) -> Configuration<T> {
    let mut points: Vec<Point<T>> = Vec::with_capacity(k);
    while points.len() < k {
        let p = Point::new((0..n).map(|_| T::lit(rng.gen_range(-half_width..=half_width))).collect());
        if !points.contains(&p) && !punctures.contains(&p) {
            points.push(p);
        }
    }
    Configuration::from_points(points)
}
