use thiserror::Error;

/// Errors produced by the hypergraph kernels.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("arity must be at least 2, got {0}")]
    BadArity(usize),
    #[error("edge {index} has {found} vertices, expected {expected}")]
    EdgeSize {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("edge {index} repeats vertex {vertex}")]
    EdgeRepeatedVertex { index: usize, vertex: usize },
    #[error("edge {index} references vertex {vertex}, but only {vertex_count} vertices exist")]
    EdgeVertexRange {
        index: usize,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("edge {index} duplicates an earlier edge")]
    DuplicateEdge { index: usize },
    #[error("vertex selection is empty")]
    EmptyVertexSet,
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("hypergraph has no vertices")]
    NoVertices,
    #[error("hypergraph has no edges")]
    NoEdges,
    #[error("vertex count {vertices} exceeds the exhaustive search bound {bound}")]
    SearchBoundExceeded { vertices: usize, bound: usize },
    #[error("invalid exponent: {0}")]
    InvalidExponent(String),
    #[error(
        "exponent {num}/{den} cannot guard the working range: need max(num, den) > {bound}"
    )]
    ExponentGuard { num: u64, den: u64, bound: u64 },
    #[error("extension type ({vertices},{edges}) exceeds the genericity bound {bound}")]
    GenericityExceeded {
        vertices: usize,
        edges: usize,
        bound: u64,
    },
    #[error("roots must form a proper subset of the vertex set")]
    InvalidRoots,
    #[error("tuple has length {found}, expected {expected}")]
    TupleLength { expected: usize, found: usize },
    #[error("{0}")]
    InfeasibleDensity(String),
    #[error("circular construction: {0}")]
    CircularParams(String),
    #[error("input is not strictly balanced (witness {witness:?})")]
    NotStrictlyBalanced { witness: Vec<usize> },
    #[error("no strictly balanced graph of density {rho} found within {cap} vertices")]
    SearchCapExceeded { rho: String, cap: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("edge probability {0} is not in [0, 1]")]
    InvalidProbability(f64),
    #[error("{0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
