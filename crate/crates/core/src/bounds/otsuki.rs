//! Tangent directions with small normal curvature.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::geometry::{MetricSample, SecondFundamentalForm};
use crate::sampling::unit_vector;
use crate::{Error, Result, Vector};

const SECTIONAL_SLACK: f64 = 1e-9;
const VALUE_TOLERANCE: f64 = 1e-6;
const SEARCH_DIRECTIONS: usize = 2000;
const GRADIENT_STEPS: usize = 50;
const RANDOM_PLANES: usize = 64;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OtsukiResult {
    /// Chart components of a `g`-unit tangent vector.
    pub w: Vec<f64>,
    /// `|II(W, W)|`.
    pub value: f64,
    pub chi: f64,
    pub within_bound: bool,
    /// Largest sectional curvature over the sampled planes.
    pub max_sectional: f64,
}

/// II expressed in a `g`-orthonormal frame: `b[a][c] = II(E_a, E_c)`.
pub(crate) struct FrameForm {
    b: Vec<Vec<Vector>>,
    basis: crate::Matrix,
}

impl FrameForm {
    pub(crate) fn new(sff: &SecondFundamentalForm, metric: &MetricSample) -> Self {
        let basis = metric.orthonormal_basis();
        let m = sff.dim_domain();
        let cols: Vec<Vector> = (0..m).map(|a| basis.column(a).into_owned()).collect();
        let b = (0..m).map(|a| (0..m).map(|c| sff.apply(&cols[a], &cols[c])).collect()).collect();
        Self { b, basis }
    }

    fn dim(&self) -> usize {
        self.b.len()
    }

    fn apply(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zeros(self.b[0][0].len());
        for (a, row) in self.b.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                out += v * (x[a] * y[c]);
            }
        }
        out
    }

    fn sectional(&self, x: &Vector, y: &Vector) -> f64 {
        let xy = self.apply(x, y);
        self.apply(x, x).dot(&self.apply(y, y)) - xy.dot(&xy)
    }

    /// Max sectional curvature over coordinate planes of the frame and a
    /// seeded set of random planes.
    pub(crate) fn max_sectional(&self, seed: u64) -> f64 {
        let m = self.dim();
        let e = |a: usize| {
            let mut v = Vector::zeros(m);
            v[a] = 1.0;
            v
        };
        let mut best = f64::NEG_INFINITY;
        for a in 0..m {
            for c in a + 1..m {
                best = best.max(self.sectional(&e(a), &e(c)));
            }
        }
        if m > 2 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..RANDOM_PLANES {
                let x = unit_vector(&mut rng, m);
                let y = unit_vector(&mut rng, m);
                let y = &y - &x * x.dot(&y);
                let n = y.norm();
                if n > 1e-6 {
                    best = best.max(self.sectional(&x, &(y / n)));
                }
            }
        }
        best
    }
}

/// Minimizes `|II(W, W)|` over `g`-unit tangent vectors. Requires
/// `0 < n - m < m` and sectional curvatures at most `chi²` on the sampled
/// planes; under these conditions a direction with `|II(W,W)| <= chi` exists.
pub fn otsuki_direction(sff: &SecondFundamentalForm, metric: &MetricSample, chi: f64) -> Result<OtsukiResult> {
    let (m, n) = (sff.dim_domain(), sff.dim_ambient());
    if !(n > m && n - m < m) {
        return Err(Error::CodimensionOutOfRange { codim: n.saturating_sub(m), m });
    }
    if !(chi >= 0.0) {
        return Err(Error::InvalidParams("chi must be non-negative".into()));
    }
    let form = FrameForm::new(sff, metric);
    let max_sectional = form.max_sectional(0);
    if max_sectional > chi * chi + SECTIONAL_SLACK {
        return Err(Error::PreconditionUnverified(format!(
            "sampled sectional curvature {max_sectional} exceeds chi^2 = {}",
            chi * chi
        )));
    }

    let energy = |w: &Vector| form.apply(w, w).norm_squared();
    let candidates: Vec<Vector> = if m == 2 {
        (0..SEARCH_DIRECTIONS)
            .map(|k| {
                let t = std::f64::consts::PI * k as f64 / SEARCH_DIRECTIONS as f64;
                Vector::from_vec(vec![t.cos(), t.sin()])
            })
            .collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        (0..SEARCH_DIRECTIONS.max(200 * m)).map(|_| unit_vector(&mut rng, m)).collect()
    };
    let values = crate::par::map(&candidates, |w| energy(w));
    let start = (0..values.len()).fold(0, |b, i| if values[i] < values[b] { i } else { b });
    let mut w = candidates[start].clone();
    let mut f = values[start];

    let mut step = 0.1;
    for _ in 0..GRADIENT_STEPS {
        let q = form.apply(&w, &w);
        let mut grad = Vector::from_fn(m, |a, _| {
            let mut e = Vector::zeros(m);
            e[a] = 1.0;
            4.0 * q.dot(&form.apply(&e, &w))
        });
        grad -= &w * grad.dot(&w);
        if grad.norm() < 1e-15 {
            break;
        }
        let mut accepted = false;
        for _ in 0..40 {
            let trial = &w - &grad * step;
            let trial = &trial / trial.norm();
            let ft = energy(&trial);
            if ft < f {
                w = trial;
                f = ft;
                step *= 2.0;
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }

    let chart = &form.basis * &w;
    let value = sff.apply(&chart, &chart).norm();
    Ok(OtsukiResult {
        w: chart.iter().copied().collect(),
        value,
        chi,
        within_bound: value <= chi + VALUE_TOLERANCE,
        max_sectional,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{evaluate_point, second_fundamental_form, DomainBox, FnMap, MetricMode};
    use crate::models::{ParaboloidFamily, SphereFamily};

    fn at(map: &dyn crate::geometry::ChartedMap, x: Vec<f64>) -> (SecondFundamentalForm, MetricSample) {
        let x = Vector::from_vec(x);
        let sff = second_fundamental_form(map, &x).unwrap();
        let metric = evaluate_point(map, &MetricMode::Induced, &x).unwrap().metric;
        (sff, metric)
    }

    #[test]
    fn sphere_is_umbilic() {
        let s = SphereFamily { radius: 2.0, center_height: 5.0 };
        let (sff, g) = at(&s, vec![1.1, 0.4]);
        let r = otsuki_direction(&sff, &g, 0.5).unwrap();
        assert!((r.value - 0.5).abs() < 1e-6);
        assert!(r.within_bound);
        let w = Vector::from_vec(r.w.clone());
        assert!((g.norm(&w) - 1.0).abs() < 1e-9);
    }

    #[test]
    fn saddle_asymptotic_direction() {
        let saddle = FnMap::new(2, 3, DomainBox::cube(2, 1.0), |x: &Vector| {
            Vector::from_vec(vec![x[0], x[1], x[0] * x[0] - x[1] * x[1]])
        });
        let (sff, g) = at(&saddle, vec![0.0, 0.0]);
        let r = otsuki_direction(&sff, &g, 0.0).unwrap();
        assert!(r.value < 1e-6, "{r:?}");
        assert!((r.w[0].abs() - r.w[1].abs()).abs() < 1e-3);
    }

    #[test]
    fn paraboloid_origin() {
        let p = ParaboloidFamily::new(2, 0.1, 1.0).unwrap();
        let (sff, g) = at(&p, vec![0.0, 0.0]);
        let r = otsuki_direction(&sff, &g, 2.0).unwrap();
        assert!((r.value - 2.0).abs() < 1e-9);
        assert!(r.within_bound);
        assert!(matches!(otsuki_direction(&sff, &g, 1.0), Err(Error::PreconditionUnverified(_))));
    }

    #[test]
    fn codimension_checked() {
        let flat = FnMap::new(2, 5, DomainBox::cube(2, 1.0), |x: &Vector| {
            Vector::from_vec(vec![x[0], x[1], x[0] * x[1], 0.0, 1.0])
        });
        let (sff, g) = at(&flat, vec![0.1, 0.2]);
        assert!(matches!(otsuki_direction(&sff, &g, 1.0), Err(Error::CodimensionOutOfRange { codim: 3, m: 2 })));
    }
}
