//! Maximum spanning tree by Kruskal's algorithm.

use crate::dsu::Dsu;
use crate::graph::{CapacitatedGraph, EdgeId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningTree {
    edges: Vec<EdgeId>,
    is_tree_edge: Vec<bool>,
}

impl SpanningTree {
    /// Tree edges in increasing `EdgeId` order.
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.is_tree_edge[e.index()]
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Builds a tree from an explicit edge list. The caller guarantees the
    /// edges form a spanning tree of `g`.
    pub fn from_edges(g: &CapacitatedGraph, edges: impl IntoIterator<Item = EdgeId>) -> Self {
        let mut is_tree_edge = vec![false; g.edge_count()];
        for e in edges {
            is_tree_edge[e.index()] = true;
        }
        let edges = (0..g.edge_count())
            .filter(|&i| is_tree_edge[i])
            .map(EdgeId)
            .collect();
        SpanningTree {
            edges,
            is_tree_edge,
        }
    }
}

/// Returns the maximum spanning tree of a validated (connected) graph.
///
/// Edges are scanned in decreasing `(capacity, EdgeId)` order, so with
/// pairwise distinct capacities the result is the unique maximum tree.
pub fn build_max_spanning_tree(g: &CapacitatedGraph) -> SpanningTree {
    let n = g.vertex_count();
    let mut order: Vec<EdgeId> = g.edge_ids().collect();
    order.sort_unstable_by_key(|&e| std::cmp::Reverse(g.order_key(e)));

    let mut dsu = Dsu::with_singletons(n);
    let mut accepted = Vec::with_capacity(n.saturating_sub(1));
    for e in order {
        if accepted.len() + 1 >= n {
            break;
        }
        let edge = g.edge(e);
        let x = dsu.find(edge.u.index()).expect("vertex in range");
        let y = dsu.find(edge.v.index()).expect("vertex in range");
        if x != y {
            dsu.join(x, y).expect("distinct canonical elements");
            accepted.push(e);
        }
    }
    SpanningTree::from_edges(g, accepted)
}
