//! Minimal connected dominating sets: exact enumeration, the hub-composite
//! lower-bound construction, closed-form bounds and a search harness for
//! better base graphs.

pub mod bounds;
pub mod canon;
pub mod codec;
pub mod constructions;
pub mod embedding;
pub mod enumeration;
pub mod error;
pub mod graph;
pub mod predicates;
pub mod search;
pub mod structure;

pub use error::{Error, Result};
pub use graph::{make_graph, Graph, VertexSet};
