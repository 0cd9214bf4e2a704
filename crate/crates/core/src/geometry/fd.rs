//! Central finite differences with steps balancing truncation and rounding.

use crate::Vector;

/// Step for first derivatives: `eps^(1/3) * max(1, |x|)`.
pub fn first_step(x: &Vector) -> f64 {
    f64::EPSILON.cbrt() * x.norm().max(1.0)
}

/// Step for second derivatives: `eps^(1/4) * max(1, |x|)`.
pub fn second_step(x: &Vector) -> f64 {
    f64::EPSILON.powf(0.25) * x.norm().max(1.0)
}

fn shifted(x: &Vector, i: usize, h: f64) -> Vector {
    let mut y = x.clone();
    y[i] += h;
    y
}

fn shifted2(x: &Vector, i: usize, hi: f64, j: usize, hj: f64) -> Vector {
    let mut y = x.clone();
    y[i] += hi;
    y[j] += hj;
    y
}

/// Central-difference partials of a vector-valued function with step `h`.
pub fn partials<F>(f: &F, x: &Vector, h: f64) -> Vec<Vector>
where
    F: Fn(&Vector) -> Vector + ?Sized,
{
    (0..x.len())
        .map(|i| (f(&shifted(x, i, h)) - f(&shifted(x, i, -h))) / (2.0 * h))
        .collect()
}

/// Central-difference second partials, row-major `m*m`, symmetric by construction.
pub fn second_partials<F>(f: &F, x: &Vector, fx: &Vector, h: f64) -> Vec<Vector>
where
    F: Fn(&Vector) -> Vector + ?Sized,
{
    let m = x.len();
    let mut out = vec![Vector::zeros(fx.len()); m * m];
    for i in 0..m {
        let diag = (f(&shifted(x, i, h)) - fx * 2.0 + f(&shifted(x, i, -h))) / (h * h);
        out[i * m + i] = diag;
        for j in (i + 1)..m {
            let mixed = (f(&shifted2(x, i, h, j, h)) - f(&shifted2(x, i, h, j, -h))
                - f(&shifted2(x, i, -h, j, h))
                + f(&shifted2(x, i, -h, j, -h)))
                / (4.0 * h * h);
            out[i * m + j] = mixed.clone();
            out[j * m + i] = mixed;
        }
    }
    out
}

/// Gradient of a scalar function with step `h`.
pub fn gradient<F>(f: &F, x: &Vector, h: f64) -> Vector
where
    F: Fn(&Vector) -> f64 + ?Sized,
{
    Vector::from_iterator(
        x.len(),
        (0..x.len()).map(|i| (f(&shifted(x, i, h)) - f(&shifted(x, i, -h))) / (2.0 * h)),
    )
}

/// Coordinate Hessian of a scalar function with step `h`.
pub fn hessian<F>(f: &F, x: &Vector, h: f64) -> crate::Matrix
where
    F: Fn(&Vector) -> f64 + ?Sized,
{
    let m = x.len();
    let fx = f(x);
    let mut out = crate::Matrix::zeros(m, m);
    for i in 0..m {
        out[(i, i)] = (f(&shifted(x, i, h)) - 2.0 * fx + f(&shifted(x, i, -h))) / (h * h);
        for j in (i + 1)..m {
            let v = (f(&shifted2(x, i, h, j, h)) - f(&shifted2(x, i, h, j, -h))
                - f(&shifted2(x, i, -h, j, h))
                + f(&shifted2(x, i, -h, j, -h)))
                / (4.0 * h * h);
            out[(i, j)] = v;
            out[(j, i)] = v;
        }
    }
    out
}
