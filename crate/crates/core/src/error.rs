use thiserror::Error;

use crate::lie::Violation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("vector is not in the subalgebra: coordinate {index} is {value}")]
    NotInSubalgebra { index: usize, value: String },

    #[error("invalid Lie pair:\n{}", format_violations(.0))]
    InvalidPair(Vec<Violation>),

    #[error("malformed pair file: {0}")]
    Format(String),

    #[error("invalid rational literal {0:?}")]
    BadRational(String),

    #[error("module action is not flat on the pair ({0}, {1})")]
    NotFlat(usize, usize),

    #[error("cochain is not a cocycle")]
    NotCocycle,

    #[error("tensor is not homogeneous")]
    NonHomogeneous,

    #[error("tensor lies outside the truncation: {0}")]
    OutsideTruncation(String),

    #[error("invalid truncation: {0}")]
    InvalidTruncation(String),

    #[error("invalid connection: {0}")]
    InvalidConnection(String),

    #[error("curvature cochain failed cocycle certification")]
    CocycleCertification,

    #[error("connection independence failed: cocycle difference is not a coboundary")]
    IndependenceFailed,

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(|x| format!("  {x}")).collect::<Vec<_>>().join("\n")
}

pub type Result<T> = std::result::Result<T, Error>;
