//! Preprocessed state answering per-edge tolerance queries for a fixed set of
//! source/target pairs.
//!
//! Tolerances are taken with respect to the max-min path `P*_i` that the
//! maximum spanning tree carries between `s_i` and `t_i`. After
//! preprocessing, the lower and upper tolerance of an edge for one pair take
//! a constant number of array reads:
//!
//! * `e` on `T(s_i, t_i)`: upper is `+inf`; lower is `+inf` when `e` has no
//!   lower replacement `e'`, otherwise `c(e) - min(c(e'), c(e*_i))`.
//! * `e` off that path: lower is `+inf`; upper is `c(e*_i) - c(e)` when the
//!   upper replacement of `e` is exactly `e*_i` (it then lies on the path),
//!   and `+inf` otherwise.
//!
//! Here `e*_i` is the minimum edge on `T(s_i, t_i)`.
//!
//! A [`ToleranceOracle`] is immutable once built and holds no interior
//! mutability, so it can be shared across threads and queried concurrently.
//!
//! For min-max (bottleneck minimization) instances negate every capacity; the
//! tolerances then swap roles (lower becomes upper and vice versa).

use std::fmt;

use thiserror::Error;

use crate::graph::{
    validate_with, CapacitatedGraph, Capacity, EdgeId, QueryPair, TieBreaking, VertexId, Violation,
};
use crate::mst::{build_max_spanning_tree, SpanningTree};
use crate::replacement::ReplacementTables;
use crate::tree_index::{build_index, RootedTreeIndex};

/// A tolerance value: a finite nonnegative capacity change or `+inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Tolerance {
    Finite(u64),
    Infinite,
}

impl Tolerance {
    pub fn is_finite(self) -> bool {
        matches!(self, Tolerance::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Tolerance::Finite(v) => Some(v),
            Tolerance::Infinite => None,
        }
    }

    /// `a - b` for `a >= b`.
    pub(crate) fn difference(a: Capacity, b: Capacity) -> Self {
        debug_assert!(a >= b, "negative tolerance {a} - {b}");
        Tolerance::Finite(a.abs_diff(b))
    }
}

impl fmt::Display for Tolerance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tolerance::Finite(v) => write!(f, "{v}"),
            Tolerance::Infinite => f.write_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TolerancePair {
    pub lower: Tolerance,
    pub upper: Tolerance,
}

impl TolerancePair {
    pub fn new(lower: Tolerance, upper: Tolerance) -> Self {
        TolerancePair { lower, upper }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("invalid graph: {0}")]
    InvalidGraph(#[from] Violation),
    #[error("pair {index}: vertex {vertex} out of range 1..={n}")]
    PairOutOfRange {
        index: usize,
        vertex: VertexId,
        n: usize,
    },
    #[error("pair {index}: source equals target")]
    DegeneratePair { index: usize },
    #[error("edge {edge} out of range 1..={m}")]
    EdgeOutOfRange { edge: EdgeId, m: usize },
    #[error("pair index {index} out of range 1..={k}")]
    PairIndexOutOfRange { index: usize, k: usize },
}

/// Cached data for one source/target pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairContext {
    pub pair: QueryPair,
    /// Minimum edge on the tree path, the bottleneck edge of `P*`.
    pub bottleneck_edge: EdgeId,
    pub bottleneck_value: Capacity,
}

/// Per-pair data in the layout read by the query loop.
#[derive(Debug, Clone, Copy)]
struct PairSlot {
    s_pos: u32,
    t_pos: u32,
    bottleneck_edge: u32,
    bottleneck_value: Capacity,
}

/// Per-edge data in the layout read by the query loop.
#[derive(Debug, Clone, Copy)]
enum EdgeSlot {
    Tree {
        capacity: Capacity,
        /// Euler interval of the deeper endpoint.
        lo: u32,
        hi: u32,
        lower_replacement: Option<Capacity>,
    },
    NonTree {
        capacity: Capacity,
        upper_replacement: Option<(u32, u32, u32)>,
    },
}

#[inline]
fn inside(lo: u32, hi: u32, pos: u32) -> bool {
    lo <= pos && pos <= hi
}

#[derive(Debug, Clone)]
pub struct ToleranceOracle {
    graph: CapacitatedGraph,
    tree: SpanningTree,
    index: RootedTreeIndex,
    tables: ReplacementTables,
    contexts: Vec<PairContext>,
    pair_slots: Vec<PairSlot>,
    edge_slots: Vec<EdgeSlot>,
}

impl ToleranceOracle {
    /// Validates `graph` (rejecting duplicate capacities) and preprocesses it
    /// for the given pairs.
    pub fn preprocess(graph: CapacitatedGraph, pairs: &[QueryPair]) -> Result<Self, OracleError> {
        Self::preprocess_with(graph, pairs, TieBreaking::Reject)
    }

    pub fn preprocess_with(
        graph: CapacitatedGraph,
        pairs: &[QueryPair],
        ties: TieBreaking,
    ) -> Result<Self, OracleError> {
        validate_with(&graph, ties)?;
        let n = graph.vertex_count();
        for (index, pair) in pairs.iter().enumerate() {
            for vertex in [pair.s, pair.t] {
                if vertex.index() >= n {
                    return Err(OracleError::PairOutOfRange {
                        index: index + 1,
                        vertex,
                        n,
                    });
                }
            }
            if pair.s == pair.t {
                return Err(OracleError::DegeneratePair { index: index + 1 });
            }
        }

        let tree = build_max_spanning_tree(&graph);
        let index = build_index(&tree, &graph, VertexId(0));
        let tables = ReplacementTables::compute(&graph, &tree, &index);
        Ok(Self::assemble(graph, tree, index, tables, pairs))
    }

    /// Builds the query layout from already computed components.
    fn assemble(
        graph: CapacitatedGraph,
        tree: SpanningTree,
        index: RootedTreeIndex,
        tables: ReplacementTables,
        pairs: &[QueryPair],
    ) -> Self {
        let contexts: Vec<PairContext> = pairs
            .iter()
            .map(|&pair| {
                let bottleneck_edge = index
                    .path_min_edge(pair.s, pair.t)
                    .expect("pairs are checked to have s != t");
                PairContext {
                    pair,
                    bottleneck_edge,
                    bottleneck_value: graph.capacity(bottleneck_edge),
                }
            })
            .collect();
        let pair_slots = contexts
            .iter()
            .map(|ctx| PairSlot {
                s_pos: index.euler_interval(ctx.pair.s).0,
                t_pos: index.euler_interval(ctx.pair.t).0,
                bottleneck_edge: ctx.bottleneck_edge.index() as u32,
                bottleneck_value: ctx.bottleneck_value,
            })
            .collect();
        let edge_slots = graph
            .edge_ids()
            .map(|e| {
                let capacity = graph.capacity(e);
                match index.child_of(e) {
                    Some(child) => {
                        let (lo, hi) = index.euler_interval(child);
                        EdgeSlot::Tree {
                            capacity,
                            lo,
                            hi,
                            lower_replacement: tables.lower(e).map(|r| graph.capacity(r)),
                        }
                    }
                    None => EdgeSlot::NonTree {
                        capacity,
                        upper_replacement: tables.upper(e).map(|r| {
                            let child = index.child_of(r).expect("replacement is a tree edge");
                            let (lo, hi) = index.euler_interval(child);
                            (r.index() as u32, lo, hi)
                        }),
                    },
                }
            })
            .collect();
        ToleranceOracle {
            graph,
            tree,
            index,
            tables,
            contexts,
            pair_slots,
            edge_slots,
        }
    }

    pub fn graph(&self) -> &CapacitatedGraph {
        &self.graph
    }

    pub fn tree(&self) -> &SpanningTree {
        &self.tree
    }

    pub fn index(&self) -> &RootedTreeIndex {
        &self.index
    }

    pub fn tables(&self) -> &ReplacementTables {
        &self.tables
    }

    pub fn contexts(&self) -> &[PairContext] {
        &self.contexts
    }

    pub fn pair_count(&self) -> usize {
        self.contexts.len()
    }

    fn check_edge(&self, e: EdgeId) -> Result<(), OracleError> {
        if e.index() >= self.edge_slots.len() {
            return Err(OracleError::EdgeOutOfRange {
                edge: e,
                m: self.edge_slots.len(),
            });
        }
        Ok(())
    }

    fn check_pair(&self, i: usize) -> Result<(), OracleError> {
        if i >= self.contexts.len() {
            return Err(OracleError::PairIndexOutOfRange {
                index: i + 1,
                k: self.contexts.len(),
            });
        }
        Ok(())
    }

    /// `b_G(s_i, t_i)` for the zero-based pair index `i`.
    pub fn bottleneck_value(&self, i: usize) -> Result<Capacity, OracleError> {
        self.check_pair(i)?;
        Ok(self.contexts[i].bottleneck_value)
    }

    #[inline]
    fn evaluate(slot: &EdgeSlot, pair: &PairSlot) -> TolerancePair {
        match *slot {
            EdgeSlot::Tree {
                capacity,
                lo,
                hi,
                lower_replacement,
            } => {
                let on_path = inside(lo, hi, pair.s_pos) != inside(lo, hi, pair.t_pos);
                let lower = match (on_path, lower_replacement) {
                    (true, Some(r)) => {
                        Tolerance::difference(capacity, r.min(pair.bottleneck_value))
                    }
                    _ => Tolerance::Infinite,
                };
                TolerancePair::new(lower, Tolerance::Infinite)
            }
            EdgeSlot::NonTree {
                capacity,
                upper_replacement,
            } => {
                let upper = match upper_replacement {
                    None => Tolerance::Infinite,
                    Some((r, lo, hi)) => {
                        let on_path = inside(lo, hi, pair.s_pos) != inside(lo, hi, pair.t_pos);
                        if !on_path || r != pair.bottleneck_edge {
                            Tolerance::Infinite
                        } else {
                            Tolerance::difference(pair.bottleneck_value, capacity)
                        }
                    }
                };
                TolerancePair::new(Tolerance::Infinite, upper)
            }
        }
    }

    /// Lower and upper tolerance of `e` for the zero-based pair index `i`.
    pub fn query_edge_for_pair(&self, e: EdgeId, i: usize) -> Result<TolerancePair, OracleError> {
        self.check_edge(e)?;
        self.check_pair(i)?;
        Ok(Self::evaluate(
            &self.edge_slots[e.index()],
            &self.pair_slots[i],
        ))
    }

    /// All `k` tolerance pairs of `e`, in pair order.
    pub fn query_edge(&self, e: EdgeId) -> Result<Vec<TolerancePair>, OracleError> {
        let mut out = Vec::with_capacity(self.contexts.len());
        self.query_edge_into(e, &mut out)?;
        Ok(out)
    }

    /// Like [`query_edge`](Self::query_edge) but reuses `out`.
    pub fn query_edge_into(
        &self,
        e: EdgeId,
        out: &mut Vec<TolerancePair>,
    ) -> Result<(), OracleError> {
        self.check_edge(e)?;
        let slot = &self.edge_slots[e.index()];
        out.clear();
        out.extend(self.pair_slots.iter().map(|p| Self::evaluate(slot, p)));
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::{e, g1, g2, k2};

    fn pair(s: usize, t: usize) -> QueryPair {
        QueryPair::from_one_based(s, t).unwrap()
    }

    fn fin(v: u64) -> Tolerance {
        Tolerance::Finite(v)
    }

    const INF: Tolerance = Tolerance::Infinite;

    #[test]
    fn preprocess_contexts() {
        let o = ToleranceOracle::preprocess(g2(), &[pair(1, 4)]).unwrap();
        assert_eq!(o.contexts()[0].bottleneck_edge, e(3));
        assert_eq!(o.bottleneck_value(0), Ok(6));

        let o = ToleranceOracle::preprocess(g1(), &[pair(1, 3), pair(1, 2)]).unwrap();
        assert_eq!(o.contexts()[0].bottleneck_edge, e(2));
        assert_eq!(o.bottleneck_value(0), Ok(3));
        assert_eq!(o.bottleneck_value(1), Ok(5));

        let o = ToleranceOracle::preprocess(k2(), &[pair(1, 2)]).unwrap();
        assert_eq!(o.contexts()[0].bottleneck_edge, e(1));
        assert_eq!(o.bottleneck_value(0), Ok(7));
    }

    #[test]
    fn triangle_queries() {
        let o = ToleranceOracle::preprocess(g1(), &[pair(1, 3)]).unwrap();
        assert_eq!(
            o.query_edge_for_pair(e(2), 0),
            Ok(TolerancePair::new(fin(2), INF))
        );
        assert_eq!(
            o.query_edge_for_pair(e(3), 0),
            Ok(TolerancePair::new(INF, fin(2)))
        );
        assert_eq!(
            o.query_edge_for_pair(e(1), 0),
            Ok(TolerancePair::new(fin(4), INF))
        );
        assert_eq!(
            o.query_edge(e(2)),
            Ok(vec![TolerancePair::new(fin(2), INF)])
        );
    }

    #[test]
    fn four_vertex_queries() {
        let o = ToleranceOracle::preprocess(g2(), &[pair(1, 4)]).unwrap();
        assert_eq!(
            o.query_edge_for_pair(e(4), 0),
            Ok(TolerancePair::new(INF, INF))
        );
        assert_eq!(
            o.query_edge_for_pair(e(5), 0),
            Ok(TolerancePair::new(INF, fin(4)))
        );
        assert_eq!(
            o.query_edge_for_pair(e(3), 0),
            Ok(TolerancePair::new(fin(4), INF))
        );
    }

    #[test]
    fn duplicate_pairs_answer_identically() {
        let o = ToleranceOracle::preprocess(g2(), &[pair(1, 4), pair(1, 4)]).unwrap();
        let answers = o.query_edge(e(5)).unwrap();
        assert_eq!(answers.len(), 2);
        assert_eq!(answers[0], answers[1]);
    }

    #[test]
    fn bridge_is_infinite_both_ways() {
        let o = ToleranceOracle::preprocess(k2(), &[pair(1, 2)]).unwrap();
        assert_eq!(
            o.query_edge_for_pair(e(1), 0),
            Ok(TolerancePair::new(INF, INF))
        );
    }

    #[test]
    fn usage_errors() {
        let o = ToleranceOracle::preprocess(g1(), &[pair(1, 3)]).unwrap();
        assert!(matches!(
            o.query_edge_for_pair(e(4), 0),
            Err(OracleError::EdgeOutOfRange { .. })
        ));
        assert!(matches!(
            o.query_edge_for_pair(e(1), 1),
            Err(OracleError::PairIndexOutOfRange { .. })
        ));
        assert!(o.bottleneck_value(3).is_err());

        let bad = QueryPair {
            s: VertexId(1),
            t: VertexId(1),
        };
        assert_eq!(
            ToleranceOracle::preprocess(g1(), &[bad]).unwrap_err(),
            OracleError::DegeneratePair { index: 1 }
        );
        let far = QueryPair {
            s: VertexId(0),
            t: VertexId(5),
        };
        assert!(matches!(
            ToleranceOracle::preprocess(g1(), &[far]),
            Err(OracleError::PairOutOfRange { .. })
        ));
        let dup = CapacitatedGraph::from_triples(3, &[(1, 2, 5), (2, 3, 5), (1, 3, 1)]).unwrap();
        assert!(matches!(
            ToleranceOracle::preprocess(dup.clone(), &[pair(1, 3)]),
            Err(OracleError::InvalidGraph(
                Violation::DuplicateCapacity { .. }
            ))
        ));
        assert!(
            ToleranceOracle::preprocess_with(dup, &[pair(1, 3)], TieBreaking::ByEdgeId).is_ok()
        );
    }

    #[test]
    fn tolerance_display() {
        assert_eq!(fin(12).to_string(), "12");
        assert_eq!(INF.to_string(), "inf");
    }

    #[test]
    fn extreme_capacities_do_not_overflow() {
        let g = CapacitatedGraph::from_triples(3, &[(1, 2, i64::MAX), (2, 3, 0), (1, 3, i64::MIN)])
            .unwrap();
        let o = ToleranceOracle::preprocess(g, &[pair(1, 3)]).unwrap();
        assert_eq!(
            o.query_edge_for_pair(e(1), 0),
            Ok(TolerancePair::new(fin(u64::MAX), INF))
        );
        assert_eq!(
            o.query_edge_for_pair(e(3), 0),
            Ok(TolerancePair::new(INF, fin(i64::MIN.unsigned_abs())))
        );
    }
}
