//! Naive reference routines shared by the integration tests. Nothing here
//! calls into the tree index, the replacement tables or the tolerance oracle.

#![allow(dead_code)]

use std::collections::VecDeque;

use bottleneck_tolerance::generate::{max_edges, random_connected_graph};
use bottleneck_tolerance::{CapacitatedGraph, Capacity, EdgeId, VertexId};
use rand::Rng;

pub fn random_graph<R: Rng>(rng: &mut R, min_n: usize, max_n: usize) -> CapacitatedGraph {
    let n = rng.gen_range(min_n..=max_n);
    let m = rng.gen_range(n - 1..=max_edges(n));
    random_connected_graph(n, m, 4 * m as Capacity + 1, rng).unwrap()
}

/// Parent / parent-edge / depth of a tree given as an edge list, by BFS from
/// `root`.
pub struct NaiveTree {
    pub parent: Vec<Option<VertexId>>,
    pub parent_edge: Vec<Option<EdgeId>>,
    pub depth: Vec<usize>,
}

impl NaiveTree {
    pub fn new(g: &CapacitatedGraph, tree: &[EdgeId], root: VertexId) -> Self {
        let n = g.vertex_count();
        let mut adj: Vec<Vec<(VertexId, EdgeId)>> = vec![Vec::new(); n];
        for &e in tree {
            let ed = g.edge(e);
            adj[ed.u.index()].push((ed.v, e));
            adj[ed.v.index()].push((ed.u, e));
        }
        let mut parent = vec![None; n];
        let mut parent_edge = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        depth[root.index()] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &(y, e) in &adj[x.index()] {
                if depth[y.index()] == usize::MAX {
                    depth[y.index()] = depth[x.index()] + 1;
                    parent[y.index()] = Some(x);
                    parent_edge[y.index()] = Some(e);
                    queue.push_back(y);
                }
            }
        }
        NaiveTree {
            parent,
            parent_edge,
            depth,
        }
    }

    pub fn lca(&self, mut x: VertexId, mut y: VertexId) -> VertexId {
        while self.depth[x.index()] > self.depth[y.index()] {
            x = self.parent[x.index()].unwrap();
        }
        while self.depth[y.index()] > self.depth[x.index()] {
            y = self.parent[y.index()].unwrap();
        }
        while x != y {
            x = self.parent[x.index()].unwrap();
            y = self.parent[y.index()].unwrap();
        }
        x
    }

    /// Edges of the tree path between `s` and `t`.
    pub fn path(&self, s: VertexId, t: VertexId) -> Vec<EdgeId> {
        let z = self.lca(s, t);
        let mut out = Vec::new();
        for mut x in [s, t] {
            while x != z {
                out.push(self.parent_edge[x.index()].unwrap());
                x = self.parent[x.index()].unwrap();
            }
        }
        out
    }
}

pub fn min_edge(g: &CapacitatedGraph, edges: &[EdgeId]) -> EdgeId {
    *edges.iter().min_by_key(|&&e| g.capacity(e)).unwrap()
}

/// Whether `edges` (exactly n-1 of them) connect every vertex.
pub fn is_spanning_tree(g: &CapacitatedGraph, edges: &[EdgeId]) -> bool {
    let n = g.vertex_count();
    if edges.len() + 1 != n {
        return false;
    }
    let mut label: Vec<usize> = (0..n).collect();
    for &e in edges {
        let ed = g.edge(e);
        let (a, b) = (label[ed.u.index()], label[ed.v.index()]);
        if a == b {
            return false;
        }
        for l in label.iter_mut() {
            if *l == b {
                *l = a;
            }
        }
    }
    true
}

/// Every spanning tree of `g` by subset enumeration (small `m` only).
pub fn spanning_trees(g: &CapacitatedGraph) -> Vec<Vec<EdgeId>> {
    let m = g.edge_count();
    let k = g.vertex_count() - 1;
    assert!(m <= 20);
    let mut out = Vec::new();
    for mask in 0u32..(1 << m) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let edges: Vec<EdgeId> = (0..m).filter(|i| mask >> i & 1 == 1).map(EdgeId).collect();
        if is_spanning_tree(g, &edges) {
            out.push(edges);
        }
    }
    out
}

pub fn weight(g: &CapacitatedGraph, edges: &[EdgeId]) -> i128 {
    edges.iter().map(|&e| g.capacity(e) as i128).sum()
}

/// Maximum-weight spanning tree by enumeration, sorted by id.
pub fn brute_max_spanning_tree(g: &CapacitatedGraph) -> Vec<EdgeId> {
    spanning_trees(g)
        .into_iter()
        .max_by_key(|t| weight(g, t))
        .unwrap()
}
