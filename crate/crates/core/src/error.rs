use thiserror::Error;

use crate::face::Face;

/// Errors raised by constructors, predicates and checkers in this crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no facets given")]
    EmptyInput,
    #[error("vertex id {id} out of range for {n} vertices")]
    BadVertex { id: usize, n: usize },
    #[error("{0} vertices requested; faces are 64-bit sets so at most 64 are supported")]
    TooManyVertices(usize),
    #[error("complex is not pure")]
    NotPure,
    #[error("{0} is not a face of the complex")]
    NotAFace(Face),
    #[error("{0} is not a facet of the complex")]
    NotAFacet(Face),
    #[error("second complex is not a subcomplex of the first")]
    NotASubcomplex,
    #[error("identification does not preserve colors: {0}")]
    ColorMismatch(String),
    #[error("identification merges distinct faces into {0}")]
    FaceCollision(Face),
    #[error("facets {0} and {1} share vertices")]
    SharedVertices(Face, Face),
    #[error("glued complex is not simplicial at face {face}: {reason}")]
    NotLocallyValid { face: Face, reason: String },
    #[error("bad dimension {0}")]
    BadDimension(usize),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("cover is disconnected")]
    DisconnectedCover,
    #[error("complex is not a rational homology sphere")]
    NotASphere,
    #[error("complex is not a homology manifold over {0}")]
    NotAManifold(String),
    #[error("vertex set is not contained in one color class")]
    NotMonochromatic,
    #[error("dimension too small: d = {d}, need d >= {min}")]
    DimensionTooSmall { d: usize, min: usize },
    #[error("complex is not Buchsbaum over {0}")]
    NotBuchsbaum(String),
    #[error("complex is not Buchsbaum* over {0}")]
    NotBuchsbaumStar(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("no unique color class of size {0}")]
    NoUniqueLargeClass(usize),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
