//! Perfect matching width toolkit for bipartite matching covered graphs.

pub mod digraph;
pub mod generate;
pub mod graph;
pub mod io;
pub mod iso;
pub mod limits;
pub mod matching;
pub mod mwidth;
pub mod porosity;
pub mod tight;
pub mod tree;
pub mod width2;
pub mod vset;

pub use digraph::Digraph;
pub use graph::{BipartiteGraph, GraphError, Matching, Side, Vertex};
pub use limits::{CapExceeded, Limits};
pub use vset::VertexSet;
