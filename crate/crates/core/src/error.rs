use std::fmt;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("a graph needs at least 2 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("{n} vertices exceeds the dense-matrix limit of {limit}")]
    TooManyVertices { n: usize, limit: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("negative capacity {capacity} on edge ({u}, {v})")]
    NegativeCapacity { u: usize, v: usize, capacity: String },
    #[error("no contractible edge")]
    NoContractibleEdge,
    #[error("cannot contract a graph with only two supernodes")]
    LastPair,
    #[error("({0}, {1}) is not a pair of distinct live supernodes")]
    InvalidPair(usize, usize),
    #[error("cut side must be a nonempty proper subset of the vertices")]
    TrivialSide,
    #[error("expected exactly two supernodes, found {0}")]
    NotFullyContracted(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("exhaustive search supports at most {limit} vertices, got {n}; use deterministic_min_cut")]
    OracleTooLarge { n: usize, limit: usize },
    #[error("same-size repeat cap of {0} exceeded")]
    RepeatCapExceeded(usize),
    #[error("target cut has value {target} but the minimum cut value is {minimum}")]
    TargetNotMinimum { target: String, minimum: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("csv: {0}")]
    Csv(String),
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Csv(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    MissingHeader,
    MalformedHeader,
    MalformedEdge,
    VertexOutOfRange { vertex: usize, n: usize },
    SelfLoop(usize),
    UnorderedEndpoints(usize, usize),
    NegativeCapacity,
    EdgeCount { expected: usize, found: usize },
    TooFewVertices(usize),
}

/// A graph-file error, tagged with the 1-based line it was found on.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::MissingHeader => write!(f, "missing `n m` header"),
            ParseErrorKind::MalformedHeader => write!(f, "malformed header, expected `n m`"),
            ParseErrorKind::MalformedEdge => write!(f, "malformed edge, expected `u v w`"),
            ParseErrorKind::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex id {vertex} out of range for {n} vertices")
            }
            ParseErrorKind::SelfLoop(v) => write!(f, "self-loop on vertex {v}"),
            ParseErrorKind::UnorderedEndpoints(u, v) => {
                write!(f, "edge endpoints must satisfy u < v, got {u} {v}")
            }
            ParseErrorKind::NegativeCapacity => write!(f, "negative capacity"),
            ParseErrorKind::EdgeCount { expected, found } => {
                write!(f, "header declares {expected} edges, found {found}")
            }
            ParseErrorKind::TooFewVertices(n) => write!(f, "need at least 2 vertices, got {n}"),
        }
    }
}
