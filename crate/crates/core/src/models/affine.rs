use crate::geometry::{ChartedMap, DomainBox, Jet, JetKind};
use crate::{Matrix, Vector};

/// `x -> A x + c`; harmonic for every domain metric with vanishing connection.
#[derive(Debug, Clone)]
pub struct AffineMap {
    pub linear: Matrix,
    pub offset: Vector,
    pub domain: DomainBox,
}

impl AffineMap {
    pub fn new(linear: Matrix, offset: Vector, domain: DomainBox) -> Self {
        assert_eq!(linear.nrows(), offset.len());
        assert_eq!(linear.ncols(), domain.dim());
        Self { linear, offset, domain }
    }

    /// `x -> (x, 0, …, 0) + offset`, an isometric embedding of `R^m` into `R^n`.
    pub fn coordinate_plane(m: usize, n: usize, offset: Vector, box_radius: f64) -> Self {
        let linear = Matrix::from_fn(n, m, |i, j| if i == j { 1.0 } else { 0.0 });
        Self::new(linear, offset, DomainBox::cube(m, box_radius))
    }
}

impl ChartedMap for AffineMap {
    fn dim_domain(&self) -> usize {
        self.linear.ncols()
    }
    fn dim_ambient(&self) -> usize {
        self.linear.nrows()
    }
    fn evaluate(&self, x: &Vector) -> Vector {
        &self.linear * x + &self.offset
    }
    fn domain_box(&self) -> DomainBox {
        self.domain.clone()
    }
    fn jet_kind(&self) -> JetKind {
        JetKind::Analytic
    }
    fn jet(&self, x: &Vector) -> Jet {
        let m = self.dim_domain();
        let n = self.dim_ambient();
        Jet {
            value: self.evaluate(x),
            first: (0..m).map(|i| self.linear.column(i).into_owned()).collect(),
            second: vec![Vector::zeros(n); m * m],
        }
    }
}
