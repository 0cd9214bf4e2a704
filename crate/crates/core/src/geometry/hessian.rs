//! Riemannian Hessian of scalar functions on a chart.

use super::fd;
use super::metric::MetricSample;
use crate::{Matrix, Result, Vector};

/// `(Hess f)_{ij} = ∂_i∂_j f - Γ^k_{ij} ∂_k f` in the coordinate basis.
#[derive(Debug, Clone)]
pub struct ScalarHessian {
    pub coords: Matrix,
}

impl ScalarHessian {
    /// `Hess f(W, W)` for chart components `w`.
    pub fn along(&self, w: &Vector) -> f64 {
        w.dot(&(&self.coords * w))
    }

    /// Components in the `g`-orthonormal frame given by the Cholesky factor.
    pub fn in_orthonormal_frame(&self, metric: &MetricSample) -> Matrix {
        let e = metric.orthonormal_basis();
        e.transpose() * &self.coords * e
    }

    /// `Δf = g^{ij} (Hess f)_{ij}`.
    pub fn laplacian(&self, metric: &MetricSample) -> f64 {
        metric.g_inv.component_mul(&self.coords).sum()
    }
}

/// Finite-difference Hessian of `f` at `x`, using the connection in `metric`.
pub fn hessian_scalar<F>(f: &F, metric: &MetricSample, x: &Vector) -> Result<ScalarHessian>
where
    F: Fn(&Vector) -> f64 + ?Sized,
{
    let m = x.len();
    let second = fd::hessian(f, x, fd::second_step(x));
    let grad = fd::gradient(f, x, fd::first_step(x));
    let mut coords = second;
    for i in 0..m {
        for j in 0..m {
            let mut c = 0.0;
            for k in 0..m {
                c += metric.christoffel.get(k, i, j) * grad[k];
            }
            coords[(i, j)] -= c;
        }
    }
    let coords = (&coords + coords.transpose()) * 0.5;
    Ok(ScalarHessian { coords })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::metric::{EuclideanMetric, FnMetric, MetricField};

    #[test]
    fn euclidean_quadratic_and_linear() {
        let metric = EuclideanMetric { m: 3 }.sample(&Vector::zeros(3)).unwrap();
        let x = Vector::from_vec(vec![0.4, -1.2, 2.0]);
        let quad = hessian_scalar(&|y: &Vector| 0.5 * y.norm_squared(), &metric, &x).unwrap();
        assert!((quad.coords.clone() - Matrix::identity(3, 3)).norm() < 1e-6);
        let lin = hessian_scalar(&|y: &Vector| 2.0 * y[0] - y[2] + 4.0, &metric, &x).unwrap();
        assert!(lin.coords.norm() < 1e-6);
    }

    #[test]
    fn radius_on_flat_cone_metric() {
        let field = FnMetric::new(2, |x: &Vector| Matrix::from_diagonal(&Vector::from_vec(vec![2.0, x[0] * x[0]])));
        let x = Vector::from_vec(vec![1.0, 0.3]);
        let metric = field.sample(&x).unwrap();
        let h = hessian_scalar(&|y: &Vector| y[0], &metric, &x).unwrap();
        assert!((h.coords[(1, 1)] - 0.5).abs() < 1e-6);
        assert!(h.coords[(0, 0)].abs() < 1e-6);
        // In the orthonormal frame the (θ,θ) entry is divided by |∂_θ|² = r².
        let on = h.in_orthonormal_frame(&metric);
        assert!((on[(1, 1)] - 0.5).abs() < 1e-6);
    }
}
