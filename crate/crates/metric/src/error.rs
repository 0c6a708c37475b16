use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MetricError {
    #[error("point {point:?} is outside the chart domain")]
    OutOfDomain { point: Vec<f64> },

    #[error("metric is not positive definite at {point:?}")]
    SingularMetric { point: Vec<f64> },

    #[error("geodesic left the chart domain at t = {t} near {point:?}")]
    LeftDomain { t: f64, point: Vec<f64> },

    #[error("grid too coarse: error estimate {estimate:e} exceeds tolerance {tolerance:e}")]
    GridTooCoarse { estimate: f64, tolerance: f64 },

    #[error("sequence does not converge: {0}")]
    NonConvergent(String),

    #[error("frame Gram determinant {det} differs from 1 by more than {tolerance:e}")]
    FrameNotOrthonormal { det: f64, tolerance: f64 },

    #[error("unknown model `{0}`")]
    UnknownModel(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, MetricError>;
