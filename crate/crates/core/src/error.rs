use thiserror::Error;

/// Errors shared by all modules of the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty input: {0}")]
    EmptyInput(String),
    #[error("duplicate vertex {vertex:?} in face {face}")]
    DuplicateVertexInFace { vertex: String, face: usize },
    #[error("empty facet subset")]
    EmptySubset,
    #[error("maps do not share source and target")]
    MismatchedEndpoints,
    #[error("vertex assignment is not simplicial: facet {0} has no spanning image")]
    NotSimplicial(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("unknown point {0:?}")]
    UnknownPoint(String),
    #[error("cycle through distinct points {0:?} and {1:?} violates antisymmetry")]
    CycleDetected(String, String),
    #[error("points {0:?} and {1:?} are comparable: not an antichain")]
    NotAntichain(String, String),
    #[error("point assignment is not order-preserving at {0:?} <= {1:?}")]
    NotMonotone(String, String),
    #[error("vertex {0:?} is not dominated by {1:?}")]
    NotDominated(String, String),
    #[error("point {0:?} is not a beat point")]
    NotBeatPoint(String),
    #[error("{0} is not a subcomplex of the ambient complex")]
    NotASubcomplex(String),
    #[error("subset is not open (not downward closed at {0:?})")]
    NotOpen(String),
    #[error("invalid input document: {0}")]
    Parse(String),
    #[error("certificate does not certify the claimed cover element: {0}")]
    InvalidCertificate(String),
    #[error("collapse trace replay does not reproduce the recorded end object")]
    TraceReplayMismatch,
    #[error("size limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("too many vertices: {0} (at most {1} supported)")]
    TooLarge(usize, usize),
}
