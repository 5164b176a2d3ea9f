use thiserror::Error;

use crate::construct::CountAnalysis;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("both binary forms are zero")]
    BothZero,
    #[error("binary form is zero")]
    ZeroForm,
    #[error("all coordinates are zero")]
    ZeroVector,
    #[error("parameter (0:0) is not a point of P^1")]
    ZeroParameter,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("ambient dimension {0} is not supported (need n >= 3)")]
    BadDimension(usize),
    #[error("matrix is not invertible")]
    Singular,
    #[error("points do not span a codimension-two space")]
    DegenerateSpan,
    #[error("linear forms are dependent and do not define a codimension-two space")]
    DegeneratePencil,
    #[error("matrix of linear forms does not define a rational normal curve: {reason}")]
    NotGenericMatrix { reason: String },
    #[error("parametrization is not a rational normal curve: {reason}")]
    InvalidCurve { reason: String },
    #[error("repeated parameter {0}")]
    RepeatedParameter(String),
    #[error("configuration is not in generic position ({stage}): {witness}")]
    NotGeneric { stage: String, witness: String },
    #[error("input meets the fundamental locus of the Cremona transformation")]
    FundamentalLocus,
    #[error("datum shape (p, l) = ({}, {}) does not satisfy p + l = n + 3", .analysis.p, .analysis.l)]
    BadShape { analysis: Box<CountAnalysis> },
    #[error("obstruction quadric vanishes at the fourth point ({value}); datum is special")]
    ObstructionFails { value: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn not_generic(stage: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::NotGeneric { stage: stage.into(), witness: witness.into() }
    }

    pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
        if expected == found {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected, found })
        }
    }
}
