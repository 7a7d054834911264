use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("undefined aspect ratio: need at least 2 points, got {0}")]
    UndefinedAspectRatio(usize),
    #[error("metric has {n} points, above the exhaustive limit of {limit}; use sampled mode")]
    AboveExhaustiveLimit { n: usize, limit: usize },
    #[error("radii must be positive (R = {big}, r = {small})")]
    NonPositiveRadius { big: String, small: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("point index {index} out of range for {n} points")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("duplicate points at indices {0} and {1}")]
    DuplicatePoint(usize, usize),
    #[error("non-finite coordinate at point {0}")]
    NonFiniteCoordinate(usize),
    #[error("instance too small for this epsilon: epsilon^-d = {required} exceeds {available}")]
    InstanceTooSmall { required: String, available: usize },
    #[error("construction `{0}` requires a points2d metric")]
    RequiresPoints2d(String),
    #[error("construction `{0}` requires an hst or line_of_copies metric")]
    RequiresLowerBoundInstance(String),
    #[error("size mismatch: metric has {metric} points, graph has {graph}")]
    SizeMismatch { metric: usize, graph: usize },
    #[error("edge ({u}, {v}) has weight {found}, metric distance is {expected}")]
    WeightMismatch {
        u: usize,
        v: usize,
        found: String,
        expected: String,
    },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
