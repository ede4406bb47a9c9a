//! Spanning trees that come close to being homeomorphically irreducible.
//!
//! A spanning tree is homeomorphically irreducible when it has no vertex of
//! degree 2. Not every graph has one, so this crate builds the next best
//! thing: trees whose degree-2 vertices are pairwise non-adjacent (for graphs
//! covered by large stars), and trees with no path of three degree-2
//! vertices that all have degree at least 3 in the host.
//!
//! Every construction returns a value that can be checked independently with
//! [`certificates`], and [`oracle`] provides brute-force ground truth for
//! small graphs.

pub mod certificates;
pub mod generators;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod reduction;
pub mod report;
pub mod structure;
pub mod synthesis;
pub mod tree;

pub use graph::{Edge, Graph, GraphError, Vertex};
pub use tree::{Tree, TreeError};
