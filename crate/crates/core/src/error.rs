use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    #[error("truncation order mismatch: {left} vs {right}")]
    TruncMismatch { left: u32, right: u32 },

    #[error("basis label mismatch")]
    LabelMismatch,

    #[error("basis index {index} out of range 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("power series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,

    #[error("constant-term matrix is singular")]
    SingularMatrix,

    #[error("ordering generating function must start with 1, got {0}")]
    BadLeadingCoefficient(String),

    #[error("degree {degree} exceeds the bound {bound}")]
    DegreeBound { degree: u32, bound: u32 },

    #[error("truncation order {trunc} is too small for degree {degree}")]
    TruncationTooSmall { trunc: u32, degree: u32 },

    #[error("invalid rational literal {0:?}")]
    BadRational(String),

    #[error("invalid Lie algebra: {0}")]
    InvalidAlgebra(String),

    #[error("unknown catalog algebra {0:?}")]
    UnknownAlgebra(String),

    #[error("invalid ordering spec {0:?}")]
    BadOrdering(String),

    #[error("json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, AlgebraError>;

impl From<serde_json::Error> for AlgebraError {
    fn from(e: serde_json::Error) -> Self {
        AlgebraError::Json(e.to_string())
    }
}
