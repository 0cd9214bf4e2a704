use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The differential drops rank or the metric is not positive definite.
    #[error("singular metric: sigma_min = {sigma_min:e}, sigma_max = {sigma_max:e}")]
    SingularMetric { sigma_min: f64, sigma_max: f64 },

    #[error("tangent vectors are not orthonormal: {0}")]
    DegeneratePlane(String),

    /// A sample coincides with the cone vertex.
    #[error("sample at distance {distance:e} from the vertex")]
    ApexSample { distance: f64 },

    /// No non-degenerate cone with the given vertex contains the input.
    #[error("no non-degenerate cone: minimal angular radius {angle} rad")]
    DegenerateCone { angle: f64 },

    #[error("unknown family {0:?}")]
    UnknownFamily(String),

    #[error("empty input")]
    EmptyInput,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("codimension {codim} outside (0, {m})")]
    CodimensionOutOfRange { codim: usize, m: usize },

    #[error("precondition unverified: {0}")]
    PreconditionUnverified(String),

    #[error("quadrature did not converge after {levels} refinements")]
    QuadratureFailure { levels: usize },

    #[error("non-finite integrand value at r = {at}")]
    EvaluationFailure { at: f64 },

    /// Wraps a failure at one sample of a sweep.
    #[error("sample {index} at {point:?}: {source}")]
    AtSample { index: usize, point: Vec<f64>, source: Box<Error> },
}

impl Error {
    pub fn at_sample(self, index: usize, point: &crate::Vector) -> Self {
        Error::AtSample { index, point: point.iter().copied().collect(), source: Box::new(self) }
    }

    /// The error with any sample wrappers removed.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtSample { source, .. } => source.root(),
            other => other,
        }
    }
}
