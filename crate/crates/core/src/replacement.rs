//! Replacement edges of the maximum spanning tree.
//!
//! For a non-tree edge `xy` its replacement is the minimum edge on the tree
//! path `T(x, y)`. For a tree edge it is the maximum non-tree edge whose tree
//! path covers it, or `None` for bridges. Swapping an edge with its
//! replacement gives the best spanning tree containing (resp. avoiding) it.

use crate::dsu::Dsu;
use crate::graph::{CapacitatedGraph, EdgeId, VertexId};
use crate::mst::SpanningTree;
use crate::tree_index::RootedTreeIndex;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReplacementTables {
    /// Indexed by `EdgeId`; `Some` only for non-tree edges.
    pub upper: Vec<Option<EdgeId>>,
    /// Indexed by `EdgeId`; `Some` only for covered tree edges.
    pub lower: Vec<Option<EdgeId>>,
}

impl ReplacementTables {
    pub fn compute(g: &CapacitatedGraph, t: &SpanningTree, idx: &RootedTreeIndex) -> Self {
        ReplacementTables {
            upper: compute_upper_replacements(g, t, idx),
            lower: compute_lower_replacements(g, t, idx),
        }
    }

    pub fn upper(&self, e: EdgeId) -> Option<EdgeId> {
        self.upper[e.index()]
    }

    pub fn lower(&self, e: EdgeId) -> Option<EdgeId> {
        self.lower[e.index()]
    }
}

/// One path-minimum query per non-tree edge.
pub fn compute_upper_replacements(
    g: &CapacitatedGraph,
    t: &SpanningTree,
    idx: &RootedTreeIndex,
) -> Vec<Option<EdgeId>> {
    g.edge_ids()
        .map(|e| {
            if t.contains(e) {
                None
            } else {
                let edge = g.edge(e);
                Some(
                    idx.path_min_edge(edge.u, edge.v)
                        .expect("validated graph has no self-loops"),
                )
            }
        })
        .collect()
}

/// Contraction walk over the non-tree edges in decreasing capacity order.
///
/// Every non-tree edge `xy` is split at `z = lca(x, y)` into the vertical
/// halves `xz` and `yz`. A disjoint-set structure over the tree vertices
/// tracks which tree edges already have a replacement: each set is a
/// connected subtree whose topmost vertex is stored in `top`. Handling a half
/// `(y, z)` climbs from the set of `y` to the set of `z`, assigning the
/// current edge to every uncovered parent edge it crosses and merging as it
/// goes, so each tree edge is assigned exactly once.
pub fn compute_lower_replacements(
    g: &CapacitatedGraph,
    t: &SpanningTree,
    idx: &RootedTreeIndex,
) -> Vec<Option<EdgeId>> {
    let n = g.vertex_count();
    let mut lower = vec![None; g.edge_count()];

    // (lower endpoint, ancestor, originating edge); halves with z equal to
    // their own endpoint cover nothing and are dropped.
    let mut halves: Vec<(VertexId, VertexId, EdgeId)> = Vec::new();
    for e in g.edge_ids().filter(|&e| !t.contains(e)) {
        let edge = g.edge(e);
        let z = idx.lca(edge.u, edge.v);
        for x in [edge.u, edge.v] {
            if x != z {
                halves.push((x, z, e));
            }
        }
    }
    halves.sort_by_key(|&(_, _, e)| std::cmp::Reverse(g.order_key(e)));

    let mut dsu = Dsu::with_singletons(n);
    let mut top: Vec<VertexId> = (0..n).map(VertexId).collect();
    for (y, z, e) in halves {
        let mut current = dsu.find(y.index()).expect("vertex in range");
        // The root of z's set may move when that set is joined.
        while current != dsu.find(z.index()).expect("vertex in range") {
            let head = top[current];
            let covered = idx
                .parent_edge(head)
                .expect("walk stays strictly below the ancestor set");
            debug_assert!(lower[covered.index()].is_none());
            lower[covered.index()] = Some(e);
            let above = dsu
                .find(idx.parent(head).expect("non-root").index())
                .expect("vertex in range");
            let above_top = top[above];
            dsu.join(current, above)
                .expect("distinct canonical elements");
            current = dsu.find(above).expect("vertex in range");
            top[current] = above_top;
        }
    }
    lower
}
