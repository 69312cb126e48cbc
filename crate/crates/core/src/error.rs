use thiserror::Error;

/// Errors raised by gaf construction, morphism validation and the derived operations.
///
/// Every variant has a stable machine-readable code (see [`Error::code`]) which the
/// command-line front end reports verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("involution is not self-inverse at half-edge {half_edge}")]
    InvolutionNotSelfInverse { half_edge: usize },

    #[error("involution fixes half-edge {half_edge}")]
    InvolutionHasFixedPoint { half_edge: usize },

    #[error("{map}: index {index} out of range")]
    IndexOutOfRange { map: &'static str, index: usize },

    #[error("{map}: expected {expected} entries, found {found}")]
    LengthMismatch {
        map: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("{map} does not restrict to the selection at index {index}")]
    NotClosed { map: &'static str, index: usize },

    #[error("boundary mismatch: expected {expected}, found {found}")]
    BoundaryMismatch { expected: usize, found: usize },

    #[error("map is not equivariant for {map} at index {index}")]
    NotEquivariant { map: &'static str, index: usize },

    #[error("preimage of inner vertex {vertex} is not a non-based tree")]
    PreimageNotTree { vertex: usize },

    #[error("preimage of attaching vertex {vertex} is not a union of based trees, one per attaching preimage")]
    PreimageWrongBasing { vertex: usize },

    #[error("half-edge {half_edge} of the target does not have exactly one preimage")]
    HalfEdgeNotSingleton { half_edge: usize },

    #[error("condition on attaching vertices and markings violated: {detail}")]
    RestrictionViolated { detail: String },

    #[error("target of the first morphism differs from the source of the second")]
    SourceTargetMismatch,

    #[error("edges {edges:?} do not span a forest")]
    NotAForest { edges: Vec<usize> },

    #[error("tree spanned by edges {edges:?} contains two attaching vertices")]
    TwoAttachingVerticesInTree { edges: Vec<usize> },

    #[error("coloured morphism has an empty palette, so there is no distinguished colour")]
    NoDistinguishedColor,

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("enumeration budget of {limit} exceeded")]
    BudgetExceeded { limit: usize },

    #[error("internal invariant broken: {0}")]
    Internal(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvolutionNotSelfInverse { .. } => "InvolutionNotSelfInverse",
            Error::InvolutionHasFixedPoint { .. } => "InvolutionHasFixedPoint",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::NotClosed { .. } => "NotClosed",
            Error::BoundaryMismatch { .. } => "BoundaryMismatch",
            Error::NotEquivariant { .. } => "NotEquivariant",
            Error::PreimageNotTree { .. } => "PreimageNotTree",
            Error::PreimageWrongBasing { .. } => "PreimageWrongBasing",
            Error::HalfEdgeNotSingleton { .. } => "HalfEdgeNotSingleton",
            Error::RestrictionViolated { .. } => "RestrictionViolated",
            Error::SourceTargetMismatch => "SourceTargetMismatch",
            Error::NotAForest { .. } => "NotAForest",
            Error::TwoAttachingVerticesInTree { .. } => "TwoAttachingVerticesInTree",
            Error::NoDistinguishedColor => "NoDistinguishedColor",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::Internal(_) => "Internal",
        }
    }

    pub(crate) fn internal(context: &str, err: Error) -> Error {
        Error::Internal(format!("{context}: {err}"))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
