//! Smallest enclosing ball in `R^n` by Welzl's algorithm with move-to-front.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::{Matrix, Vector};

/// Relative slack in the containment test used while building the ball.
const SLACK: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct Ball {
    pub center: Vector,
    pub radius: f64,
    /// Indices of the points on the boundary that determine the ball.
    pub support: Vec<usize>,
}

impl Ball {
    fn empty(dim: usize) -> Self {
        Self { center: Vector::zeros(dim), radius: -1.0, support: Vec::new() }
    }

    pub fn contains(&self, p: &Vector) -> bool {
        self.radius >= 0.0 && (p - &self.center).norm() <= self.radius * (1.0 + SLACK) + SLACK
    }
}

/// Circumscribed ball of the support points inside their affine hull.
fn support_ball(points: &[Vector], support: &[usize], dim: usize) -> Ball {
    let Some((&first, rest)) = support.split_first() else {
        return Ball::empty(dim);
    };
    let q0 = &points[first];
    if rest.is_empty() {
        return Ball { center: q0.clone(), radius: 0.0, support: support.to_vec() };
    }
    let edges: Vec<Vector> = rest.iter().map(|&i| &points[i] - q0).collect();
    let k = edges.len();
    let gram = Matrix::from_fn(k, k, |i, j| 2.0 * edges[i].dot(&edges[j]));
    let rhs = Vector::from_iterator(k, edges.iter().map(|e| e.norm_squared()));
    let lambda = match gram.clone().lu().solve(&rhs) {
        Some(l) if l.iter().all(|x| x.is_finite()) => l,
        // affinely dependent support: least-norm solution
        _ => gram.svd(true, true).solve(&rhs, 1e-14).unwrap_or_else(|_| Vector::zeros(k)),
    };
    let center = edges.iter().zip(lambda.iter()).fold(q0.clone(), |acc, (e, l)| acc + e * *l);
    let radius = support.iter().map(|&i| (&points[i] - &center).norm()).fold(0.0, f64::max);
    Ball { center, radius, support: support.to_vec() }
}

struct Solver<'a> {
    points: &'a [Vector],
    order: Vec<usize>,
    dim: usize,
}

impl Solver<'_> {
    fn mtf(&mut self, end: usize, support: &mut Vec<usize>) -> Ball {
        let mut ball = support_ball(self.points, support, self.dim);
        if support.len() == self.dim + 1 {
            return ball;
        }
        for i in 0..end {
            let p = self.order[i];
            if !ball.contains(&self.points[p]) {
                support.push(p);
                ball = self.mtf(i, support);
                support.pop();
                self.order[..=i].rotate_right(1);
            }
        }
        ball
    }
}

/// Smallest ball enclosing `points`. The initial order is a seeded shuffle,
/// so the result is deterministic for a given seed.
pub fn smallest_enclosing_ball(points: &[Vector], seed: u64) -> Ball {
    let dim = points.first().map_or(0, |p| p.len());
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let mut solver = Solver { points, order, dim };
    let mut support = Vec::with_capacity(dim + 1);
    let n = points.len();
    solver.mtf(n, &mut support)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn v(xs: &[f64]) -> Vector {
        Vector::from_column_slice(xs)
    }

    #[test]
    fn two_points_give_midpoint() {
        let b = smallest_enclosing_ball(&[v(&[0.0, 0.0]), v(&[2.0, 0.0])], 0);
        assert!((b.center - v(&[1.0, 0.0])).norm() < 1e-15);
        assert!((b.radius - 1.0).abs() < 1e-15);
    }

    #[test]
    fn obtuse_triangle_uses_longest_edge() {
        let pts = [v(&[0.0, 0.0]), v(&[4.0, 0.0]), v(&[2.0, 0.5])];
        let b = smallest_enclosing_ball(&pts, 3);
        assert!((b.radius - 2.0).abs() < 1e-12);
        assert_eq!(b.support.len(), 2);
    }

    #[test]
    fn random_clouds_are_enclosed_and_tight() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for trial in 0..50 {
            let pts: Vec<Vector> =
                (0..40).map(|_| Vector::from_iterator(4, (0..4).map(|_| rng.gen_range(-1.0..1.0)))).collect();
            let b = smallest_enclosing_ball(&pts, trial);
            assert!(pts.iter().all(|p| (p - &b.center).norm() <= b.radius + 1e-12));
            // support points lie on the boundary
            for &i in &b.support {
                assert!(((&pts[i] - &b.center).norm() - b.radius).abs() < 1e-9);
            }
            // seed independence of the radius
            let other = smallest_enclosing_ball(&pts, trial + 1000);
            assert!((other.radius - b.radius).abs() < 1e-10);
        }
    }

    #[test]
    fn duplicate_points_are_harmless() {
        let pts = vec![v(&[1.0, 1.0, 0.0]); 5];
        let b = smallest_enclosing_ball(&pts, 0);
        assert!(b.radius.abs() < 1e-15);
    }
}
