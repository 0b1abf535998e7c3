//! Online sensitivity analysis for bottleneck (max-min) paths.
//!
//! Given a connected graph with pairwise distinct edge capacities and `k`
//! source/target pairs fixed in advance, [`ToleranceOracle::preprocess`]
//! builds the maximum spanning tree, an LCA / path-minimum index over it and
//! the replacement edge of every edge. Afterwards the lower and upper
//! tolerance of any edge with respect to each pair's max-min path is answered
//! in `O(1)` per pair.
//!
//! The [`reference`] module is an exhaustive oracle for small graphs used by
//! [`verify`] to check the fast path.

pub mod bench;
pub mod dsu;
pub mod generate;
pub mod graph;
pub mod mst;
pub mod oracle;
pub mod reference;
pub mod replacement;
pub mod tree_index;
pub mod verify;

pub use graph::{
    parse_graph, parse_pairs, validate, validate_with, CapacitatedGraph, Capacity, Edge, EdgeId,
    QueryPair, TieBreaking, VertexId, Violation,
};
pub use mst::{build_max_spanning_tree, SpanningTree};
pub use oracle::{OracleError, PairContext, Tolerance, ToleranceOracle, TolerancePair};
pub use replacement::ReplacementTables;
pub use tree_index::{build_index, RootedTreeIndex};
