//! Graph algorithms around total graphs: derived-graph constructions, a
//! constructive (Delta+3) total coloring of 5-colorable graphs, clique-minor
//! certificates in total graphs, spanning-tree packing, and brute-force
//! chromatic oracles for cross-checking at small scale.

pub mod connectivity;
pub mod coloring;
pub mod derived;
pub mod graph;
pub mod minors;
pub mod oracle;
pub mod par;

pub use graph::{EdgeId, Graph, GraphError};
