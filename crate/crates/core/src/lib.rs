//! Deciding the single-interval property of graph-nonedge pairs in dimensions
//! up to three, with a distance-geometry oracle to cross-check every verdict.

pub mod certificates;
pub mod decomposition;
pub mod error;
pub mod flattenability;
pub mod generate;
pub mod graph;
pub mod minors;
pub mod numerics;
pub mod patterns;
pub mod sip;

pub use error::{Error, Result};
pub use graph::{pair, Graph, Subgraph, VertexPair, VertexSet};
