use thiserror::Error;

use crate::treedec::Violation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph is not chordal")]
    NotChordal,
    #[error("boundary graph is not chordal")]
    NotChordalBoundary,
    #[error("boundaried graphs are not compatible: {0}")]
    IncompatibleBoundaries(String),
    #[error("set is not a minimal separator of the boundary graph")]
    NotASeparator,
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("boundary too large: {0}")]
    BoundaryTooLarge(String),
    #[error("family member {0} is not independent in the matroid")]
    DependentInput(usize),
    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(Violation),
    #[error("decomposition width {width} exceeds the supported maximum {max}")]
    WidthTooLarge { width: usize, max: usize },
    #[error("instance with {n} vertices exceeds the oracle limit {max}")]
    TooLarge { n: usize, max: usize },
    #[error("instance too large: {0}")]
    InstanceTooLarge(String),
    #[error("total vertex weight overflows u64")]
    WeightOverflow,
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
