//! Second fundamental form of an immersion and Gauss-equation curvature.

use super::map::ChartedMap;
use super::metric::{induced_from_jet, MetricSample};
use super::tension::{covariant_hessian, PointGeometry};
use crate::{Error, Result, Vector};

/// Tolerance on `g`-orthonormality of the plane passed to [`sectional_curvature`].
pub const PLANE_TOLERANCE: f64 = 1e-8;

/// Normal components of `∇dphi` in the coordinate basis, plus an ambient
/// orthonormal frame of `dphi(T_x M)`.
#[derive(Debug, Clone)]
pub struct SecondFundamentalForm {
    m: usize,
    /// Row-major `m*m`.
    pub values: Vec<Vector>,
    pub frame: Vec<Vector>,
}

/// Gram-Schmidt with one re-orthogonalization pass.
pub fn orthonormal_frame(vectors: &[Vector]) -> Vec<Vector> {
    let mut frame: Vec<Vector> = Vec::with_capacity(vectors.len());
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for e in &frame {
                let c = w.dot(e);
                w -= e * c;
            }
        }
        let n = w.norm();
        frame.push(w / n);
    }
    frame
}

/// Removes the components along an orthonormal frame, twice.
pub fn normal_part(v: &Vector, frame: &[Vector]) -> Vector {
    let mut w = v.clone();
    for _ in 0..2 {
        for e in frame {
            let c = w.dot(e);
            w -= e * c;
        }
    }
    w
}

impl SecondFundamentalForm {
    /// Builds II from a point evaluated with the induced metric.
    pub fn from_point(point: &PointGeometry) -> Self {
        let m = point.jet.dim_domain();
        let frame = orthonormal_frame(&point.jet.first);
        let mut values = vec![Vector::zeros(point.jet.dim_ambient()); m * m];
        for i in 0..m {
            for j in i..m {
                let v = normal_part(&covariant_hessian(&point.jet, &point.metric, i, j), &frame);
                values[i * m + j] = v.clone();
                values[j * m + i] = v;
            }
        }
        Self { m, values, frame }
    }

    pub fn dim_domain(&self) -> usize {
        self.m
    }

    pub fn dim_ambient(&self) -> usize {
        self.frame.first().map_or(0, |e| e.len())
    }

    pub fn get(&self, i: usize, j: usize) -> &Vector {
        &self.values[i * self.m + j]
    }

    /// `II(X, Y)` for chart components.
    pub fn apply(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zeros(self.dim_ambient());
        for i in 0..self.m {
            for j in 0..self.m {
                let c = x[i] * y[j];
                if c != 0.0 {
                    out += self.get(i, j) * c;
                }
            }
        }
        out
    }

    /// `g^{ij} II(∂_i, ∂_j)`.
    pub fn trace(&self, metric: &MetricSample) -> Vector {
        let mut out = Vector::zeros(self.dim_ambient());
        for i in 0..self.m {
            for j in 0..self.m {
                out += self.get(i, j) * metric.g_inv[(i, j)];
            }
        }
        out
    }

    /// `<II(X,X), II(Y,Y)> - |II(X,Y)|^2` without any orthonormality check.
    pub fn gauss_form(&self, x: &Vector, y: &Vector) -> f64 {
        let xy = self.apply(x, y);
        self.apply(x, x).dot(&self.apply(y, y)) - xy.dot(&xy)
    }

    /// Largest violation of orthogonality between values and frame.
    pub fn normality_defect(&self) -> f64 {
        self.values
            .iter()
            .flat_map(|v| self.frame.iter().map(move |e| v.dot(e).abs()))
            .fold(0.0, f64::max)
    }
}

/// II of `map` at `x` with the induced metric.
pub fn second_fundamental_form<M: ChartedMap + ?Sized>(map: &M, x: &Vector) -> Result<SecondFundamentalForm> {
    let jet = map.jet(x);
    let metric = induced_from_jet(map, x, &jet)?;
    let tension = super::tension::tension_from_jet(&jet, &metric);
    Ok(SecondFundamentalForm::from_point(&PointGeometry { x: x.clone(), jet, metric, tension }))
}

/// Checks that `x`, `y` are `g`-orthonormal.
pub fn check_orthonormal(metric: &MetricSample, x: &Vector, y: &Vector) -> Result<()> {
    let xx = metric.inner(x, x);
    let yy = metric.inner(y, y);
    let xy = metric.inner(x, y);
    if xy.abs() > PLANE_TOLERANCE || (xx.sqrt() - 1.0).abs() > PLANE_TOLERANCE || (yy.sqrt() - 1.0).abs() > PLANE_TOLERANCE {
        return Err(Error::DegeneratePlane(format!("|X|={:.3e}, |Y|={:.3e}, <X,Y>={:.3e}", xx.sqrt(), yy.sqrt(), xy)));
    }
    Ok(())
}

/// Sectional curvature of the plane spanned by `g`-orthonormal `x`, `y`
/// through the Gauss equation.
pub fn sectional_curvature<M: ChartedMap + ?Sized>(map: &M, at: &Vector, x: &Vector, y: &Vector) -> Result<f64> {
    let jet = map.jet(at);
    let metric = induced_from_jet(map, at, &jet)?;
    check_orthonormal(&metric, x, y)?;
    let tension = super::tension::tension_from_jet(&jet, &metric);
    let sff = SecondFundamentalForm::from_point(&PointGeometry { x: at.clone(), jet, metric, tension });
    Ok(sff.gauss_form(x, y))
}
