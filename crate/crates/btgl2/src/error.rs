use thiserror::Error;

/// Library-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("valuation does not match the element's field: {0}")]
    ValuationMismatch(String),
    #[error("singular matrix: determinant is zero")]
    SingularMatrix,
    #[error("inversion of zero")]
    DivisionByZero,
    #[error("element is not hyperbolic: {0}")]
    NotHyperbolic(String),
    #[error("axes coincide")]
    SameAxis,
    #[error("axes intersect; no bridge orientation exists")]
    IntersectingAxes,
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("free-pair selection failed: {0}")]
    Contradiction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
