use thiserror::Error;

use crate::formula::ParseError;
use crate::grade::GradeError;
use crate::space::ValidationReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Grade(#[from] GradeError),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("{0}")]
    Space(String),
    #[error("not an ultra-metric space: {0}")]
    InvalidSpace(ValidationReport),
    #[error("enumeration needs 2^{bits} valuations, cap is {cap}")]
    CapExceeded { bits: usize, cap: u64 },
    #[error("unknown axiom schema `{0}`")]
    UnknownSchema(String),
    #[error("missing binding `{0}`")]
    MissingBinding(String),
    #[error("side condition violated: {0}")]
    SideCondition(String),
    #[error("map is not total: no image for `{0}`")]
    NonTotalMap(String),
    #[error("map is not bijective: {0}")]
    NotBijective(String),
    #[error("scaling constant must be positive")]
    NonPositiveScale,
    #[error("malformed proof: {0}")]
    MalformedProof(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
