use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty facet list")]
    EmptyInput,
    #[error("facet {0:?} contains a repeated vertex label")]
    DuplicateVertex(Vec<u32>),
    #[error("facet {0:?} is empty")]
    EmptyFacet(Vec<u32>),
    #[error("vertex labels must be positive")]
    NonPositiveLabel,
    #[error("complex has {0} vertices; at most {max} are supported", max = crate::complex::MAX_VERTICES)]
    TooManyVertices(usize),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("complex is not pure")]
    NotPure,
    #[error("complex is not a closed pseudomanifold: {0}")]
    NotClosedPseudomanifold(String),
    #[error("complex is not a combinatorial 3-manifold: {0}")]
    NotThreeManifold(String),
    #[error("complex is disconnected")]
    Disconnected,
    #[error("vertex set is not a nontrivial bipartition")]
    TrivialBipartition,
    #[error("vertex subset is not contained in the vertex set")]
    InvalidSubset,
    #[error("ordering is not a permutation of the vertex set")]
    InvalidOrdering,
    #[error("dimension {k} outside 0..={d}")]
    DimensionOutOfRange { k: usize, d: usize },
    #[error("{what}: n = {n} exceeds the cap of {cap}")]
    CapExceeded { what: &'static str, n: usize, cap: usize },
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
