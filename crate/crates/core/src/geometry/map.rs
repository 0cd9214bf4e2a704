//! Charted maps `phi: U ⊂ R^m -> R^n` with access to second-order jets.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::fd;
use crate::{Matrix, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum JetKind {
    Analytic,
    FiniteDifference,
}

/// Value, first partials and second partials of a map at one chart point.
#[derive(Debug, Clone)]
pub struct Jet {
    pub value: Vector,
    /// `first[i] = ∂_i phi`.
    pub first: Vec<Vector>,
    /// Row-major `m*m`, `second[i*m + j] = ∂_i ∂_j phi`.
    pub second: Vec<Vector>,
}

impl Jet {
    pub fn dim_domain(&self) -> usize {
        self.first.len()
    }

    pub fn dim_ambient(&self) -> usize {
        self.value.len()
    }

    pub fn second(&self, i: usize, j: usize) -> &Vector {
        &self.second[i * self.dim_domain() + j]
    }

    /// The `n x m` matrix whose columns are the first partials.
    pub fn differential(&self) -> Matrix {
        Matrix::from_columns(&self.first)
    }

    /// `dphi(w)` for chart components `w`.
    pub fn push_forward(&self, w: &Vector) -> Vector {
        self.first
            .iter()
            .zip(w.iter())
            .fold(Vector::zeros(self.dim_ambient()), |acc, (d, c)| acc + d * *c)
    }

    /// Largest asymmetry `|∂_i∂_j phi - ∂_j∂_i phi|`.
    pub fn asymmetry(&self) -> f64 {
        let m = self.dim_domain();
        let mut worst = 0.0_f64;
        for i in 0..m {
            for j in (i + 1)..m {
                worst = worst.max((self.second(i, j) - self.second(j, i)).norm());
            }
        }
        worst
    }
}

/// Axis-aligned sampling box in chart coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DomainBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl DomainBox {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Self {
        assert_eq!(lo.len(), hi.len(), "box corners differ in dimension");
        assert!(lo.iter().zip(&hi).all(|(a, b)| a < b), "empty box");
        Self { lo, hi }
    }

    /// The cube `[-radius, radius]^m`.
    pub fn cube(m: usize, radius: f64) -> Self {
        Self::new(vec![-radius; m], vec![radius; m])
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn center(&self) -> Vector {
        Vector::from_iterator(self.dim(), self.lo.iter().zip(&self.hi).map(|(a, b)| 0.5 * (a + b)))
    }

    pub fn half_widths(&self) -> Vector {
        Vector::from_iterator(self.dim(), self.lo.iter().zip(&self.hi).map(|(a, b)| 0.5 * (b - a)))
    }

    pub fn contains(&self, x: &Vector) -> bool {
        x.iter().zip(self.lo.iter().zip(&self.hi)).all(|(v, (a, b))| *a <= *v && *v <= *b)
    }
}

/// A map from an `m`-dimensional chart domain into `R^n`.
///
/// Built-in families override [`ChartedMap::jet`] with closed forms; anything
/// else falls back to central finite differences.
pub trait ChartedMap: Send + Sync {
    fn dim_domain(&self) -> usize;
    fn dim_ambient(&self) -> usize;
    fn evaluate(&self, x: &Vector) -> Vector;
    fn domain_box(&self) -> DomainBox;

    fn jet_kind(&self) -> JetKind {
        JetKind::FiniteDifference
    }

    fn jet(&self, x: &Vector) -> Jet {
        finite_difference_jet(&|y: &Vector| self.evaluate(y), x)
    }
}

impl<M: ChartedMap + ?Sized> ChartedMap for Arc<M> {
    fn dim_domain(&self) -> usize {
        (**self).dim_domain()
    }
    fn dim_ambient(&self) -> usize {
        (**self).dim_ambient()
    }
    fn evaluate(&self, x: &Vector) -> Vector {
        (**self).evaluate(x)
    }
    fn domain_box(&self) -> DomainBox {
        (**self).domain_box()
    }
    fn jet_kind(&self) -> JetKind {
        (**self).jet_kind()
    }
    fn jet(&self, x: &Vector) -> Jet {
        (**self).jet(x)
    }
}

impl<M: ChartedMap + ?Sized> ChartedMap for &M {
    fn dim_domain(&self) -> usize {
        (**self).dim_domain()
    }
    fn dim_ambient(&self) -> usize {
        (**self).dim_ambient()
    }
    fn evaluate(&self, x: &Vector) -> Vector {
        (**self).evaluate(x)
    }
    fn domain_box(&self) -> DomainBox {
        (**self).domain_box()
    }
    fn jet_kind(&self) -> JetKind {
        (**self).jet_kind()
    }
    fn jet(&self, x: &Vector) -> Jet {
        (**self).jet(x)
    }
}

pub fn finite_difference_jet<F>(f: &F, x: &Vector) -> Jet
where
    F: Fn(&Vector) -> Vector + ?Sized,
{
    let value = f(x);
    let first = fd::partials(f, x, fd::first_step(x));
    let second = fd::second_partials(f, x, &value, fd::second_step(x));
    Jet { value, first, second }
}

type MapFn = dyn Fn(&Vector) -> Vector + Send + Sync;

/// A user-supplied map; jets come from finite differences.
#[derive(Clone)]
pub struct FnMap {
    m: usize,
    n: usize,
    domain: DomainBox,
    f: Arc<MapFn>,
}

impl FnMap {
    pub fn new<F>(m: usize, n: usize, domain: DomainBox, f: F) -> Self
    where
        F: Fn(&Vector) -> Vector + Send + Sync + 'static,
    {
        assert_eq!(domain.dim(), m);
        Self { m, n, domain, f: Arc::new(f) }
    }
}

impl fmt::Debug for FnMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnMap").field("m", &self.m).field("n", &self.n).finish()
    }
}

impl ChartedMap for FnMap {
    fn dim_domain(&self) -> usize {
        self.m
    }
    fn dim_ambient(&self) -> usize {
        self.n
    }
    fn evaluate(&self, x: &Vector) -> Vector {
        (self.f)(x)
    }
    fn domain_box(&self) -> DomainBox {
        self.domain.clone()
    }
}

/// Forces finite-difference jets on a map that has analytic ones.
#[derive(Debug, Clone)]
pub struct FiniteDifference<M>(pub M);

impl<M: ChartedMap> ChartedMap for FiniteDifference<M> {
    fn dim_domain(&self) -> usize {
        self.0.dim_domain()
    }
    fn dim_ambient(&self) -> usize {
        self.0.dim_ambient()
    }
    fn evaluate(&self, x: &Vector) -> Vector {
        self.0.evaluate(x)
    }
    fn domain_box(&self) -> DomainBox {
        self.0.domain_box()
    }
}

/// `y -> phi(origin + Q y)` for an invertible linear change of chart basis.
#[derive(Debug, Clone)]
pub struct Reparametrized<M> {
    inner: M,
    origin: Vector,
    basis: Matrix,
    basis_inv: Matrix,
}

impl<M: ChartedMap> Reparametrized<M> {
    pub fn new(inner: M, origin: Vector, basis: Matrix) -> Self {
        let basis_inv = basis.clone().try_inverse().expect("reparametrization basis must be invertible");
        Self { inner, origin, basis, basis_inv }
    }

    /// Chart point of the wrapped map corresponding to `y`.
    pub fn to_inner(&self, y: &Vector) -> Vector {
        &self.origin + &self.basis * y
    }

    pub fn from_inner(&self, x: &Vector) -> Vector {
        &self.basis_inv * (x - &self.origin)
    }
}

impl<M: ChartedMap> ChartedMap for Reparametrized<M> {
    fn dim_domain(&self) -> usize {
        self.inner.dim_domain()
    }
    fn dim_ambient(&self) -> usize {
        self.inner.dim_ambient()
    }
    fn evaluate(&self, y: &Vector) -> Vector {
        self.inner.evaluate(&self.to_inner(y))
    }
    fn domain_box(&self) -> DomainBox {
        // Bounding box of the image of the inner box's corners.
        let inner = self.inner.domain_box();
        let m = inner.dim();
        let mut lo = vec![f64::INFINITY; m];
        let mut hi = vec![f64::NEG_INFINITY; m];
        for mask in 0..(1usize << m) {
            let corner = Vector::from_iterator(
                m,
                (0..m).map(|i| if mask >> i & 1 == 1 { inner.hi[i] } else { inner.lo[i] }),
            );
            let y = self.from_inner(&corner);
            for i in 0..m {
                lo[i] = lo[i].min(y[i]);
                hi[i] = hi[i].max(y[i]);
            }
        }
        DomainBox::new(lo, hi)
    }
    fn jet_kind(&self) -> JetKind {
        self.inner.jet_kind()
    }
    fn jet(&self, y: &Vector) -> Jet {
        let inner = self.inner.jet(&self.to_inner(y));
        let m = self.dim_domain();
        let q = &self.basis;
        let first = (0..m)
            .map(|a| {
                (0..m).fold(Vector::zeros(inner.dim_ambient()), |acc, i| acc + &inner.first[i] * q[(i, a)])
            })
            .collect();
        let mut second = Vec::with_capacity(m * m);
        for a in 0..m {
            for b in 0..m {
                let mut acc = Vector::zeros(inner.dim_ambient());
                for i in 0..m {
                    for j in 0..m {
                        acc += inner.second(i, j) * (q[(i, a)] * q[(j, b)]);
                    }
                }
                second.push(acc);
            }
        }
        Jet { value: inner.value, first, second }
    }
}

/// `x -> factor * phi(x) + shift`.
#[derive(Debug, Clone)]
pub struct Scaled<M> {
    pub inner: M,
    pub factor: f64,
    pub shift: Vector,
}

impl<M: ChartedMap> Scaled<M> {
    pub fn new(inner: M, factor: f64) -> Self {
        let n = inner.dim_ambient();
        Self { inner, factor, shift: Vector::zeros(n) }
    }

    pub fn with_shift(mut self, shift: Vector) -> Self {
        self.shift = shift;
        self
    }
}

impl<M: ChartedMap> ChartedMap for Scaled<M> {
    fn dim_domain(&self) -> usize {
        self.inner.dim_domain()
    }
    fn dim_ambient(&self) -> usize {
        self.inner.dim_ambient()
    }
    fn evaluate(&self, x: &Vector) -> Vector {
        self.inner.evaluate(x) * self.factor + &self.shift
    }
    fn domain_box(&self) -> DomainBox {
        self.inner.domain_box()
    }
    fn jet_kind(&self) -> JetKind {
        self.inner.jet_kind()
    }
    fn jet(&self, x: &Vector) -> Jet {
        let j = self.inner.jet(x);
        let s = self.factor;
        Jet {
            value: j.value * s + &self.shift,
            first: j.first.into_iter().map(|v| v * s).collect(),
            second: j.second.into_iter().map(|v| v * s).collect(),
        }
    }
}
