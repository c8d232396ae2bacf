//! Vertex rankings, shallow tree minors, near-twins and flip-based
//! sparsification for sparse graphs.
//!
//! Everything operates on [`Graph`], an immutable simple undirected graph with
//! dense integer vertex ids and named unary predicates.

pub mod caps;
pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub mod labd;
pub mod logic;
pub mod neartwin;
pub mod ranking;
pub mod shallow;
pub mod sparsify;

pub use caps::Caps;
pub use error::{Error, ParseError, Result};
pub use graph::{Graph, Vertex, VertexSet};
