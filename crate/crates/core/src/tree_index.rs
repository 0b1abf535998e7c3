//! Rooted spanning tree with constant-time LCA and logarithmic path-minimum
//! queries.
//!
//! LCA uses a sparse table over the Euler tour (`O(n log n)` build, `O(1)`
//! query). Path minima use binary lifting: level `j` stores the `2^j`-th
//! ancestor of each vertex and the minimum-capacity edge on that upward walk.
//! Ancestor tests reduce to Euler-interval containment, which is what makes
//! the edge-on-path check `O(1)`.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::{CapacitatedGraph, Capacity, EdgeId, VertexId};
use crate::mst::SpanningTree;

const NONE: u32 = u32::MAX;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum TreeIndexError {
    #[error("path endpoints coincide at vertex {0}")]
    SameEndpoints(VertexId),
    #[error("edge {0} is not a tree edge")]
    NotTreeEdge(EdgeId),
}

#[derive(Debug, Clone)]
pub struct RootedTreeIndex {
    root: VertexId,
    parent: Vec<u32>,
    /// Edge joining a vertex to its parent, `NONE` for the root.
    parent_edge: Vec<u32>,
    /// Capacity of `parent_edge`, cached so lifting never touches the graph.
    parent_capacity: Vec<Capacity>,
    depth: Vec<u32>,
    /// Deeper endpoint of every tree edge, `NONE` for non-tree edges.
    edge_child: Vec<u32>,
    euler: Vec<u32>,
    first: Vec<u32>,
    last: Vec<u32>,
    /// `sparse[j][i]`: shallowest vertex among `euler[i..i + 2^j]`.
    sparse: Vec<Vec<u32>>,
    /// `up[j][v]`: the `2^j`-th ancestor of `v` (clamped at the root).
    up: Vec<Vec<u32>>,
    /// `low[j][v]`: vertex whose parent edge is the minimum on the `2^j`
    /// edges above `v`, `NONE` if that walk is empty.
    low: Vec<Vec<u32>>,
}

/// Builds the index for the tree `t` of `g`, rooted at `root`.
pub fn build_index(t: &SpanningTree, g: &CapacitatedGraph, root: VertexId) -> RootedTreeIndex {
    RootedTreeIndex::new(t, g, root)
}

impl RootedTreeIndex {
    pub fn new(t: &SpanningTree, g: &CapacitatedGraph, root: VertexId) -> Self {
        let n = g.vertex_count();
        assert!(root.index() < n, "root {root} out of range");

        let mut children: Vec<Vec<u32>> = vec![Vec::new(); n];
        let mut parent = vec![NONE; n];
        let mut parent_edge = vec![NONE; n];
        let mut parent_capacity = vec![0; n];
        let mut depth = vec![0u32; n];
        let mut edge_child = vec![NONE; g.edge_count()];
        let mut visited = vec![false; n];

        let mut queue = VecDeque::from([root.index()]);
        visited[root.index()] = true;
        while let Some(x) = queue.pop_front() {
            for &e in g.incident(VertexId(x)) {
                if !t.contains(e) {
                    continue;
                }
                let y = g.edge(e).other(VertexId(x)).index();
                if visited[y] {
                    continue;
                }
                visited[y] = true;
                parent[y] = x as u32;
                parent_edge[y] = e.index() as u32;
                parent_capacity[y] = g.capacity(e);
                depth[y] = depth[x] + 1;
                edge_child[e.index()] = y as u32;
                children[x].push(y as u32);
                queue.push_back(y);
            }
        }
        debug_assert!(visited.iter().all(|&v| v), "tree does not span the graph");

        // Euler tour, iteratively.
        let mut euler = Vec::with_capacity(2 * n);
        let mut first = vec![0u32; n];
        let mut last = vec![0u32; n];
        let mut stack: Vec<(u32, usize)> = vec![(root.index() as u32, 0)];
        first[root.index()] = 0;
        euler.push(root.index() as u32);
        while let Some(top) = stack.last_mut() {
            let x = top.0;
            if let Some(&y) = children[x as usize].get(top.1) {
                top.1 += 1;
                first[y as usize] = euler.len() as u32;
                euler.push(y);
                stack.push((y, 0));
            } else {
                last[x as usize] = euler.len() as u32 - 1;
                stack.pop();
                if let Some(&(p, _)) = stack.last() {
                    euler.push(p);
                }
            }
        }

        let shallower = |a: u32, b: u32| {
            if depth[a as usize] <= depth[b as usize] {
                a
            } else {
                b
            }
        };
        let mut sparse = vec![euler.clone()];
        let mut width = 1;
        while 2 * width <= euler.len() {
            let prev = sparse.last().unwrap();
            let level: Vec<u32> = (0..=euler.len() - 2 * width)
                .map(|i| shallower(prev[i], prev[i + width]))
                .collect();
            sparse.push(level);
            width *= 2;
        }

        let levels = (usize::BITS - n.max(1).leading_zeros()) as usize;
        let mut up = Vec::with_capacity(levels);
        let mut low = Vec::with_capacity(levels);
        let up0: Vec<u32> = (0..n)
            .map(|v| {
                if parent[v] == NONE {
                    v as u32
                } else {
                    parent[v]
                }
            })
            .collect();
        let low0: Vec<u32> = (0..n)
            .map(|v| if parent[v] == NONE { NONE } else { v as u32 })
            .collect();
        up.push(up0);
        low.push(low0);
        let mut index = RootedTreeIndex {
            root,
            parent,
            parent_edge,
            parent_capacity,
            depth,
            edge_child,
            euler,
            first,
            last,
            sparse,
            up: Vec::new(),
            low: Vec::new(),
        };
        for j in 1..levels {
            let (pu, pl): (&Vec<u32>, &Vec<u32>) = (&up[j - 1], &low[j - 1]);
            let mut uj = Vec::with_capacity(n);
            let mut lj = Vec::with_capacity(n);
            for v in 0..n {
                let mid = pu[v] as usize;
                uj.push(pu[mid]);
                lj.push(index.lower(pl[v], pl[mid]));
            }
            up.push(uj);
            low.push(lj);
        }
        index.up = up;
        index.low = low;
        index
    }

    /// Of two "child" vertices, the one whose parent edge comes first in
    /// `(capacity, EdgeId)` order. `NONE` loses to everything.
    #[inline]
    fn lower(&self, a: u32, b: u32) -> u32 {
        if a == NONE {
            return b;
        }
        if b == NONE {
            return a;
        }
        let ka = (
            self.parent_capacity[a as usize],
            self.parent_edge[a as usize],
        );
        let kb = (
            self.parent_capacity[b as usize],
            self.parent_edge[b as usize],
        );
        if ka <= kb {
            a
        } else {
            b
        }
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, x: VertexId) -> Option<VertexId> {
        match self.parent[x.index()] {
            NONE => None,
            p => Some(VertexId(p as usize)),
        }
    }

    pub fn parent_edge(&self, x: VertexId) -> Option<EdgeId> {
        match self.parent_edge[x.index()] {
            NONE => None,
            e => Some(EdgeId(e as usize)),
        }
    }

    pub fn depth(&self, x: VertexId) -> usize {
        self.depth[x.index()] as usize
    }

    /// Deeper endpoint of a tree edge, `None` for non-tree edges.
    pub fn child_of(&self, e: EdgeId) -> Option<VertexId> {
        match self.edge_child[e.index()] {
            NONE => None,
            y => Some(VertexId(y as usize)),
        }
    }

    /// Positions of the first and last occurrence of `x` in the Euler tour.
    /// `z` lies in the subtree of `x` iff `first(x) <= first(z) <= last(x)`.
    #[inline]
    pub fn euler_interval(&self, x: VertexId) -> (u32, u32) {
        (self.first[x.index()], self.last[x.index()])
    }

    /// Whether `a` is an ancestor of `z` (every vertex is its own ancestor).
    #[inline]
    pub fn is_ancestor(&self, a: VertexId, z: VertexId) -> bool {
        let (lo, hi) = self.euler_interval(a);
        let fz = self.first[z.index()];
        lo <= fz && fz <= hi
    }

    pub fn lca(&self, x: VertexId, y: VertexId) -> VertexId {
        let (mut i, mut j) = (
            self.first[x.index()] as usize,
            self.first[y.index()] as usize,
        );
        if i > j {
            std::mem::swap(&mut i, &mut j);
        }
        let len = j - i + 1;
        let level = (usize::BITS - 1 - len.leading_zeros()) as usize;
        let row = &self.sparse[level];
        let (a, b) = (row[i], row[j + 1 - (1 << level)]);
        let v = if self.depth[a as usize] <= self.depth[b as usize] {
            a
        } else {
            b
        };
        VertexId(v as usize)
    }

    /// Minimum edge (as a child vertex) on the `steps` edges above `x`.
    fn climb(&self, mut x: u32, mut steps: u32) -> u32 {
        let mut best = NONE;
        let mut j = 0;
        while steps > 0 {
            if steps & 1 == 1 {
                best = self.lower(best, self.low[j][x as usize]);
                x = self.up[j][x as usize];
            }
            steps >>= 1;
            j += 1;
        }
        best
    }

    /// The minimum-capacity edge on the tree path between `s` and `t`.
    pub fn path_min_edge(&self, s: VertexId, t: VertexId) -> Result<EdgeId, TreeIndexError> {
        if s == t {
            return Err(TreeIndexError::SameEndpoints(s));
        }
        let z = self.lca(s, t);
        let dz = self.depth[z.index()];
        let a = self.climb(s.index() as u32, self.depth[s.index()] - dz);
        let b = self.climb(t.index() as u32, self.depth[t.index()] - dz);
        let child = self.lower(a, b);
        Ok(EdgeId(self.parent_edge[child as usize] as usize))
    }

    /// Whether the tree edge `e` lies on the tree path between `s` and `t`:
    /// exactly one of `s`, `t` must sit in the subtree below `e`.
    pub fn edge_on_path(
        &self,
        e: EdgeId,
        s: VertexId,
        t: VertexId,
    ) -> Result<bool, TreeIndexError> {
        let y = self.child_of(e).ok_or(TreeIndexError::NotTreeEdge(e))?;
        Ok(self.is_ancestor(y, s) != self.is_ancestor(y, t))
    }

    /// Number of binary-lifting levels.
    pub fn lift_levels(&self) -> usize {
        self.up.len()
    }

    /// Level-`j` lifting entry of `x`: its `2^j`-th ancestor (clamped at the
    /// root) and the minimum edge on the walk there.
    pub fn lift(&self, level: usize, x: VertexId) -> (VertexId, Option<EdgeId>) {
        let anc = VertexId(self.up[level][x.index()] as usize);
        let low = self.low[level][x.index()];
        let edge = (low != NONE).then(|| EdgeId(self.parent_edge[low as usize] as usize));
        (anc, edge)
    }

    pub fn euler_len(&self) -> usize {
        self.euler.len()
    }
}
