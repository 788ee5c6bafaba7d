use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("denominator vanishes at point ({})", point.join(", "))]
    DenominatorZeroAtPoint { point: Vec<String> },
    #[error("point has {got} coordinates but the function uses {needed} variables")]
    PointDimension { needed: usize, got: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("elements {0} and {1} are not composable")]
    NotComposable(String, String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid Lie algebra: {0}")]
    InvalidLieAlgebra(String),
    #[error("kernel is zero")]
    ZeroInput,
    #[error("column {0} of the kernel is identically zero")]
    BadColumn(i64),
    #[error("{0} is not contained in {1}")]
    NotASubset(String, String),
    #[error("fields live on different domains: {0} vs {1}")]
    DomainMismatch(String, String),
    #[error("grid point ({}) lies on a pole", point.join(", "))]
    PoleOnGrid { point: Vec<String> },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("unsupported action: {0}")]
    UnsupportedAction(String),
    #[error("derivations from different sectors: {0}")]
    MixedSectors(String),
    #[error("sector mismatch: {0}")]
    SectorMismatch(String),
    #[error("invalid metric: {0}")]
    InvalidMetric(String),
    #[error("metric is degenerate")]
    DegenerateMetric,
    #[error("matrix is singular")]
    Singular,
    #[error("cover member {0} is not an open set of the topology")]
    CoverNotInTopology(String),
    #[error("invalid topology: {0}")]
    InvalidTopology(String),
    #[error("invalid presheaf: {0}")]
    InvalidPresheaf(String),
    #[error("point {0} is not in the space")]
    UnknownPoint(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
