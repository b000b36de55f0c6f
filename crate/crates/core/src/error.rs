use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed number {0:?}")]
    BadNumber(String),
    #[error("decimal {0:?} is not allowed in exact mode; write it as a fraction")]
    DecimalInExactMode(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("malformed polygon document: {0}")]
    Document(String),
    #[error("a polygon needs at least one vertex")]
    EmptyPolygon,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("signed area is zero, centroid undefined")]
    AreaZero,
    #[error("expected a {expected}-gon, got {got} vertices")]
    WrongSize { expected: usize, got: usize },
    #[error("a polygon needs at least one vertex")]
    EmptyPolygon,
}
