use thiserror::Error;

/// Errors raised by the library. Numerical checks that merely fail are
/// reported through [`crate::report::VerificationReport`], not here.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("Clifford dimension {0} is outside 1..=8")]
    InvalidDimension(usize),
    #[error("the zero paravector has no inverse")]
    ZeroParavector,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("proximate order is not normalized")]
    NotNormalized,
    #[error("could not bracket phi({0}) after 200 doublings")]
    BracketFailure(f64),
    #[error("point lies on the singular sphere of the Cauchy kernel")]
    SingularKernel,
    #[error("point lies outside the integration contour")]
    OutsideContour,
    #[error("malformed input: {0}")]
    Parse(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
