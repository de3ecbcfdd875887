use thiserror::Error;

/// Errors raised by the geometry, sampling and estimation layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("curvature parameter must be finite, got {0}")]
    NonFiniteCurvature(f64),
    #[error("points live in model planes of different curvature ({0} vs {1})")]
    CurvatureMismatch(f64, f64),
    #[error("coordinates violate the embedding constraint (residual {residual:e})")]
    InvalidEmbedding { residual: f64 },
    #[error("antipodal points have no unique geodesic")]
    Antipodal,
    #[error("degenerate vertex: a side has zero length")]
    DegenerateVertex,
    #[error("side lengths ({0}, {1}, {2}) violate the triangle inequality")]
    TriangleInequality(f64, f64, f64),
    #[error("perimeter {perimeter} is not below 2*pi/sqrt(K) = {limit}")]
    PerimeterTooLarge { perimeter: f64, limit: f64 },
    #[error("{what} = {value} is outside the admissible range [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    #[error("distance {d} reaches the focal distance of the curve")]
    FocalDistance { d: f64 },
    #[error("root finder: {0}")]
    Root(#[from] RootError),
    #[error("sample graph is disconnected at eps = {eps} ({components} components)")]
    Disconnected { eps: f64, components: usize },
    #[error("ambient distances are not a metric: {0}")]
    NonMetric(String),
    #[error("sequence lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("too few admissible samples ({found} < {needed})")]
    TooFewSamples { found: usize, needed: usize },
    #[error("curvature bracket exhausted: comparisons still fail at K = {upper}")]
    BracketExhausted { upper: f64 },
    #[error("chain is not a local geodesic at hop {hop}: {length} vs intrinsic {intrinsic}")]
    NotLocalGeodesic {
        hop: usize,
        length: f64,
        intrinsic: f64,
    },
    #[error("degenerate fan: separations vanish identically")]
    DegenerateFan,
    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("serialization: {0}")]
    Serde(String),
}

/// Failure modes of [`crate::roots`].
#[derive(Debug, Error, Clone, PartialEq)]
pub enum RootError {
    #[error("no sign change on [{lo}, {hi}] (f = {flo:e}, {fhi:e})")]
    NoBracket {
        lo: f64,
        hi: f64,
        flo: f64,
        fhi: f64,
    },
    #[error("no convergence after {iterations} iterations (bracket width {width:e})")]
    NotConverged { iterations: usize, width: f64 },
    #[error("function returned NaN at x = {x}")]
    NotANumber { x: f64 },
}

pub type Result<T, E = GeomError> = std::result::Result<T, E>;
