use thiserror::Error;

/// Errors surfaced by the algebra kernel and the completion engines.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("element does not belong to ring {0}")]
    WrongRing(String),
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(String, String),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("ring {0} is not Euclidean-capable")]
    NotEuclidean(String),
    #[error("exact division failed")]
    Indivisible,
    #[error("not a valid morphism: {0}")]
    InvalidMorphism(String),
    #[error("ideal has no generators")]
    EmptyIdeal,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported ring for this operation: {0}")]
    Unsupported(String),
    #[error("stage index must be positive")]
    ZeroStage,
    #[error("horizon insufficient: {0}")]
    HorizonInsufficient(String),
    #[error("operation size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("infinite length input where finite length is required")]
    InfiniteLength,
}

pub type Result<T> = std::result::Result<T, Error>;
