use thiserror::Error;

use crate::graph::Vertex;

/// Errors raised while reading the line-oriented graph format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed input: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: duplicate edge {u} {v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: second header")]
    DuplicateHeader { line: usize },
    #[error("line {line}: record before header")]
    MissingHeader { line: usize },
    #[error("header declares {declared} edges but {found} were given")]
    EdgeCount { declared: usize, found: usize },
    #[error("empty input: no header")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("flip sets overlap without being equal")]
    OverlappingSets,
    #[error("flip names class {class} but only {classes} classes exist")]
    UnknownClass { class: usize, classes: usize },
    #[error("variable `{0}` is not bound")]
    UnboundVariable(String),
    #[error("formula syntax: {0}")]
    FormulaSyntax(String),
    #[error("scale exceeded: {0}")]
    ScaleExceeded(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),
    #[error("invalid parameter function spec: {0}")]
    ParamSpec(String),
}

impl Error {
    pub fn is_scale_exceeded(&self) -> bool {
        matches!(self, Error::ScaleExceeded(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
