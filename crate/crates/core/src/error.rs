use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("void complex")]
    VoidComplex,
    #[error("vertex index {index} out of range for {universe} labels")]
    VertexOutOfRange { index: usize, universe: usize },
    #[error("vertex universe limited to 64 vertices, got {0}")]
    TooManyVertices(usize),
    #[error("label {0:?} is not used by any facet")]
    UnusedLabel(String),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("complex is a simplex: {0}")]
    Simplex(&'static str),
    #[error("complex is not pure")]
    NotPure,
    #[error("complex is the empty-face complex {{∅}}")]
    EmptyFaceComplex,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("ordering has length {got} but the complex has {expected} facets")]
    OrderLength { expected: usize, got: usize },
    #[error("ordering is not a permutation of the facet indices")]
    NotAPermutation,
    #[error("prefix must be non-empty")]
    EmptyPrefix,
    #[error("facet {0} is already in the prefix")]
    FacetInPrefix(usize),
    #[error("{what}: {m} facets exceeds the cap of {cap}")]
    FacetCap { what: &'static str, m: usize, cap: usize },
    #[error("chain contains {0}, which is not a face")]
    NotAFace(String),
    #[error("chain faces must all have dimension {0}")]
    MixedChain(i32),
    #[error("witness is not induced: {0}")]
    NotInduced(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("sampling failed after {0} retries")]
    RetriesExhausted(usize),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, column, message: message.into() }
    }

    /// True for errors caused by a configured size limit rather than bad input.
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::FacetCap { .. } | Error::TooManyVertices(_))
    }
}
