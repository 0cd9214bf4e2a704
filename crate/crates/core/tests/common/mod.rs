#![allow(dead_code)]

use conebound::{Matrix, Vector};
use rand::Rng;
use rand_distr::StandardNormal;

/// Angle between unit vectors without the loss of `acos` near 0.
pub fn angle(a: &Vector, b: &Vector) -> f64 {
    let cross = Vector::from_vec(vec![
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]);
    cross.norm().atan2(a.dot(b))
}

fn cross(a: &Vector, b: &Vector) -> Vector {
    Vector::from_vec(vec![a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]])
}

/// Smallest spherical cap holding unit directions in R³, by enumerating all
/// caps spanned by one, two or three of them. Returns `(axis, width)`.
pub fn brute_force_cap(dirs: &[Vector]) -> (Vector, f64) {
    let n = dirs.len();
    let mut candidates: Vec<Vector> = dirs.to_vec();
    for i in 0..n {
        for j in i + 1..n {
            let s = &dirs[i] + &dirs[j];
            if s.norm() > 1e-12 {
                candidates.push(s.normalize());
            }
            for k in j + 1..n {
                let c = cross(&(&dirs[j] - &dirs[i]), &(&dirs[k] - &dirs[i]));
                if c.norm() > 1e-12 {
                    let c = c.normalize();
                    candidates.push(if c.dot(&dirs[i]) >= 0.0 { c } else { -c });
                }
            }
        }
    }
    let mut best: Option<(Vector, f64)> = None;
    for axis in candidates {
        let width = dirs.iter().map(|d| angle(&axis, d)).fold(0.0, f64::max);
        if best.as_ref().map_or(true, |(_, w)| width < *w) {
            best = Some((axis, width));
        }
    }
    best.expect("non-empty input")
}

pub fn gaussian_vector<R: Rng>(rng: &mut R, n: usize) -> Vector {
    Vector::from_fn(n, |_, _| rng.sample(StandardNormal))
}

pub fn random_rotation<R: Rng>(rng: &mut R, n: usize) -> Matrix {
    let a = Matrix::from_fn(n, n, |_, _| rng.sample(StandardNormal));
    let qr = a.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        if r[(j, j)] < 0.0 {
            let col = -q.column(j);
            q.set_column(j, &col);
        }
    }
    q
}

/// Up to eight points around a random axis, all strictly inside a cone of
/// half-angle below 1.3 rad with vertex `o`.
pub fn random_cluster<R: Rng>(rng: &mut R, o: &Vector) -> Vec<Vector> {
    let axis = gaussian_vector(rng, 3).normalize();
    let spread: f64 = rng.gen_range(0.01..1.3);
    let count = rng.gen_range(1..=8);
    (0..count)
        .map(|_| {
            let tilt = rng.gen_range(0.0..spread);
            let side = gaussian_vector(rng, 3);
            let side = (&side - &axis * side.dot(&axis)).normalize();
            let dir = &axis * tilt.cos() + side * tilt.sin();
            o + dir * rng.gen_range(0.1..10.0)
        })
        .collect()
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1e-300)
}
