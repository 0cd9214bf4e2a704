use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::geometry::{ChartedMap, Christoffel, DomainBox, Jet, JetKind, MetricField};
use crate::{Matrix, Vector};

/// Smallest chart radius; the induced metric `2dr² + r²dθ²` degenerates at the apex.
pub const FLAT_CONE_R_MIN: f64 = 1e-3;

/// `(r, θ) -> (r cos θ, r sin θ, r)`, the surface `x₃ = sqrt(x₁² + x₂²)` minus its apex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlatCone {
    pub r_min: f64,
    pub r_max: f64,
}

pub fn flat_cone_surface() -> FlatCone {
    FlatCone { r_min: FLAT_CONE_R_MIN, r_max: 10.0 }
}

impl FlatCone {
    pub fn with_radii(r_min: f64, r_max: f64) -> Self {
        assert!(r_min > 0.0 && r_max > r_min, "flat cone needs 0 < r_min < r_max");
        Self { r_min, r_max }
    }
}

impl ChartedMap for FlatCone {
    fn dim_domain(&self) -> usize {
        2
    }
    fn dim_ambient(&self) -> usize {
        3
    }
    fn evaluate(&self, x: &Vector) -> Vector {
        let (r, t) = (x[0], x[1]);
        Vector::from_vec(vec![r * t.cos(), r * t.sin(), r])
    }
    fn domain_box(&self) -> DomainBox {
        DomainBox::new(vec![self.r_min, 0.0], vec![self.r_max, 2.0 * PI])
    }
    fn jet_kind(&self) -> JetKind {
        JetKind::Analytic
    }
    fn jet(&self, x: &Vector) -> Jet {
        let r = x[0];
        let (s, c) = x[1].sin_cos();
        let v = |a: f64, b: f64, z: f64| Vector::from_vec(vec![a, b, z]);
        let first = vec![v(c, s, 1.0), v(-r * s, r * c, 0.0)];
        let mixed = v(-s, c, 0.0);
        let second = vec![Vector::zeros(3), mixed.clone(), mixed, v(-r * c, -r * s, 0.0)];
        Jet { value: self.evaluate(x), first, second }
    }
}

/// The intrinsic metric `2dr² + r²dθ²` with its closed-form connection.
#[derive(Debug, Clone, Copy, Default)]
pub struct FlatConeMetric;

impl MetricField for FlatConeMetric {
    fn dim(&self) -> usize {
        2
    }
    fn metric(&self, x: &Vector) -> Matrix {
        Matrix::from_diagonal(&Vector::from_vec(vec![2.0, x[0] * x[0]]))
    }
    fn christoffel_analytic(&self, x: &Vector) -> Option<Christoffel> {
        let r = x[0];
        let mut c = Christoffel::zeros(2);
        c.set(0, 1, 1, -0.5 * r);
        c.set(1, 0, 1, 1.0 / r);
        c.set(1, 1, 0, 1.0 / r);
        Some(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{christoffel, pullback_metric};

    #[test]
    fn induced_metric_is_two_dr2_plus_r2_dtheta2() {
        let cone = flat_cone_surface();
        let g = pullback_metric(&cone, &Vector::from_vec(vec![1.0, 0.0])).unwrap();
        assert!((g.g.clone() - Matrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 1.0])).norm() < 1e-15);
        let g = pullback_metric(&cone, &Vector::from_vec(vec![3.0, 1.2])).unwrap();
        assert!((g.g.clone() - Matrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 9.0])).norm() < 1e-13);
        // induced connection agrees with the intrinsic closed form
        let explicit = FlatConeMetric.christoffel_analytic(&Vector::from_vec(vec![3.0, 1.2])).unwrap();
        for (k, i, j) in [(0, 1, 1), (1, 0, 1), (0, 0, 0)] {
            assert!((g.christoffel.get(k, i, j) - explicit.get(k, i, j)).abs() < 1e-13);
        }
    }

    #[test]
    fn explicit_connection_matches_finite_differences() {
        let x = Vector::from_vec(vec![1.0, 0.5]);
        let fd = christoffel(&FlatConeMetric, &x).unwrap();
        let exact = FlatConeMetric.christoffel_analytic(&x).unwrap();
        assert!((fd.get(0, 1, 1) + 0.5).abs() < 1e-8);
        assert!((fd.get(1, 0, 1) - exact.get(1, 0, 1)).abs() < 1e-8);
    }
}
