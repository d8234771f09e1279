//! Node-weighted Chordal Vertex Deletion parameterized by treewidth.
//!
//! The solver runs a dynamic program over a nice tree decomposition whose states are condensed
//! boundaried chordal graphs, pruned with max representative families in the graphic matroid
//! of `Base(G[X])`. Brute-force oracles and interval-deletion gadget constructions live
//! alongside it for cross-checking.

pub mod boundary;
pub mod dp;
pub mod error;
pub mod gadgets;
pub mod graph;
pub mod io;
pub mod mask;
pub mod matroid;
pub mod oracle;
pub mod treedec;
pub mod vertex_set;

pub use error::{Error, Result};
pub use graph::WeightedGraph;
pub use vertex_set::VertexSet;
