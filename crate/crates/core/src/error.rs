use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("objects live on different ground sets")]
    AmbientMismatch,

    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),

    #[error("unknown element label `{0}`")]
    UnknownLabel(String),

    #[error("ground set has {0} elements, at most 64 are supported")]
    GroundTooLarge(usize),

    #[error("signed subset has an element that is both positive and negative")]
    OverlappingSigns,

    #[error("digraph has no arcs")]
    EmptyArcList,

    #[error("invalid matroid: {0}")]
    InvalidMatroid(String),

    #[error("circuit family violates the matroid circuit axioms: {0}")]
    CircuitAxiom(String),

    #[error("two distinct signed circuits share the support {0}")]
    SameSupport(String),

    #[error("cannot sign cocircuit {0} orthogonally to all circuits ({1} sign patterns found)")]
    OrthogonalityCompletion(String, usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix entry `{0}` is not an exact rational")]
    NonRational(String),

    #[error("not a perspective: circuit {circuit} and cocircuit {cocircuit} violate the intersection condition")]
    NotAPerspective { circuit: String, cocircuit: String },

    #[error("ground set of {n} elements exceeds the size guard of {limit}")]
    SizeGuard { n: usize, limit: usize },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("identity check failed: {0}")]
    IdentityFailure(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),
}
