//! Exhaustive ground truth for bottleneck values and tolerances.
//!
//! Every simple `s`-`t` path is enumerated, so this is exponential and only
//! meant for small verification instances (`n <= 12` by default).
//!
//! Two independent routes are provided:
//!
//! * [`PathSet::tolerances`] evaluates the closed-form max-min tolerance
//!   formulas over the families of paths containing / avoiding an edge;
//! * [`PathSet::perturbation_holds`] and [`PathSet::sweep`] apply the
//!   definition directly: perturb one capacity and test whether the fixed
//!   witness path still attains the optimum.
//!
//! The witness is the path whose ascending capacity sequence is
//! lexicographically largest. Among all optimal paths it is the one the
//! maximum spanning tree carries, which is what the tolerance oracle reports
//! against.

use thiserror::Error;

use crate::graph::{CapacitatedGraph, Capacity, EdgeId, VertexId};
use crate::oracle::{Tolerance, TolerancePair};

pub const DEFAULT_VERTEX_CAP: usize = 12;

/// `min` over an empty set of capacities.
const EMPTY_MIN: i128 = i128::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReferenceError {
    #[error("graph has {n} vertices, exhaustive enumeration is capped at {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("graph has {m} edges, more than the 128 an edge mask can hold")]
    TooManyEdges { m: usize },
    #[error("source equals target ({0})")]
    SameEndpoints(VertexId),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(VertexId),
    #[error("edge {0} out of range")]
    EdgeOutOfRange(EdgeId),
    #[error("no path between {s} and {t}")]
    NoPath { s: VertexId, t: VertexId },
}

/// Which threshold the upper-tolerance guard for an edge outside the witness
/// compares against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpperGuard {
    /// `max_{S ∋ e} min_{S \ e} c > f(F)`. Agrees with the perturbation
    /// definition.
    OptimalValue,
    /// `max_{S ∋ e} min_{S \ e} c > c(e)`. Kept to document where it differs
    /// from the perturbation definition.
    EdgeCapacity,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplePath {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub bottleneck: Capacity,
    mask: u128,
    min_edge: EdgeId,
    /// Minimum over the edges other than `min_edge`, `EMPTY_MIN` if none.
    rest_min: i128,
}

impl SimplePath {
    pub fn contains(&self, e: EdgeId) -> bool {
        self.mask >> e.index() & 1 == 1
    }

    /// `min` over the path's edges other than `e` (which it must contain).
    fn min_without(&self, e: EdgeId) -> i128 {
        if self.min_edge == e {
            self.rest_min
        } else {
            self.bottleneck as i128
        }
    }
}

/// All simple paths between two vertices.
#[derive(Debug, Clone)]
pub struct PathSet {
    pub s: VertexId,
    pub t: VertexId,
    pub paths: Vec<SimplePath>,
    capacity: Vec<Capacity>,
    witness: usize,
}

pub fn enumerate_simple_paths(
    g: &CapacitatedGraph,
    s: VertexId,
    t: VertexId,
) -> Result<PathSet, ReferenceError> {
    PathSet::enumerate_capped(g, s, t, DEFAULT_VERTEX_CAP)
}

impl PathSet {
    pub fn enumerate_capped(
        g: &CapacitatedGraph,
        s: VertexId,
        t: VertexId,
        cap: usize,
    ) -> Result<Self, ReferenceError> {
        let n = g.vertex_count();
        if n > cap {
            return Err(ReferenceError::TooLarge { n, cap });
        }
        if g.edge_count() > 128 {
            return Err(ReferenceError::TooManyEdges { m: g.edge_count() });
        }
        for x in [s, t] {
            if x.index() >= n {
                return Err(ReferenceError::VertexOutOfRange(x));
            }
        }
        if s == t {
            return Err(ReferenceError::SameEndpoints(s));
        }

        let mut paths = Vec::new();
        let mut vertices = vec![s];
        let mut edges = Vec::new();
        let mut on_path = vec![false; n];
        on_path[s.index()] = true;
        dfs(g, t, &mut vertices, &mut edges, &mut on_path, &mut paths);
        if paths.is_empty() {
            return Err(ReferenceError::NoPath { s, t });
        }

        let key = |path: &SimplePath| {
            let mut k: Vec<(Capacity, EdgeId)> =
                path.edges.iter().map(|&e| g.order_key(e)).collect();
            k.sort_unstable();
            k
        };
        let witness = (0..paths.len())
            .max_by_key(|&i| key(&paths[i]))
            .expect("non-empty");
        Ok(PathSet {
            s,
            t,
            paths,
            capacity: g.edges().iter().map(|e| e.capacity).collect(),
            witness,
        })
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Index of the lexicographic max-min path.
    pub fn witness(&self) -> usize {
        self.witness
    }

    /// `b_G(s, t)`.
    pub fn bottleneck(&self) -> Capacity {
        self.paths[self.witness].bottleneck
    }

    /// Indices of every path attaining `b_G(s, t)`.
    pub fn optimal_paths(&self) -> Vec<usize> {
        let best = self.bottleneck();
        (0..self.paths.len())
            .filter(|&i| self.paths[i].bottleneck == best)
            .collect()
    }

    fn check_edge(&self, e: EdgeId) -> Result<(), ReferenceError> {
        if e.index() >= self.capacity.len() {
            return Err(ReferenceError::EdgeOutOfRange(e));
        }
        Ok(())
    }

    /// Closed-form max-min tolerances of `e` with respect to path
    /// `witness`.
    pub fn tolerances(&self, witness: usize, e: EdgeId, guard: UpperGuard) -> TolerancePair {
        let star = &self.paths[witness];
        let f = star.bottleneck as i128;
        let ce = self.capacity[e.index()] as i128;
        if star.contains(e) {
            let avoiding = self
                .paths
                .iter()
                .filter(|p| !p.contains(e))
                .map(|p| p.bottleneck as i128)
                .max();
            let lower = match avoiding {
                Some(g) => finite(ce - g),
                None => Tolerance::Infinite,
            };
            TolerancePair::new(lower, Tolerance::Infinite)
        } else {
            let through = self
                .paths
                .iter()
                .filter(|p| p.contains(e))
                .map(|p| p.min_without(e))
                .max();
            let threshold = match guard {
                UpperGuard::OptimalValue => f,
                UpperGuard::EdgeCapacity => ce,
            };
            let upper = match through {
                Some(best) if best > threshold => finite(f - ce),
                _ => Tolerance::Infinite,
            };
            TolerancePair::new(Tolerance::Infinite, upper)
        }
    }

    /// Whether path `witness` still attains the optimum after `c(e) += delta`.
    pub fn perturbation_holds(&self, witness: usize, e: EdgeId, delta: i128) -> bool {
        let perturbed = self.capacity[e.index()] as i128 + delta;
        let value = |p: &SimplePath| {
            if p.contains(e) {
                perturbed.min(p.min_without(e))
            } else {
                p.bottleneck as i128
            }
        };
        let best = self.paths.iter().map(value).max().expect("non-empty");
        value(&self.paths[witness]) == best
    }

    /// Width of the capacity range plus one: perturbing by more than this
    /// changes no comparison with other edges.
    pub fn saturation_delta(&self) -> i128 {
        let lo = *self.capacity.iter().min().expect("non-empty") as i128;
        let hi = *self.capacity.iter().max().expect("non-empty") as i128;
        hi - lo + 1
    }

    /// Tolerances from the supremum definition by scanning every integer
    /// perturbation up to [`saturation_delta`](Self::saturation_delta).
    pub fn sweep(&self, witness: usize, e: EdgeId) -> TolerancePair {
        let limit = self.saturation_delta();
        let side = |sign: i128| {
            if self.perturbation_holds(witness, e, sign * limit) {
                return Tolerance::Infinite;
            }
            let sup = (0..limit)
                .filter(|&a| self.perturbation_holds(witness, e, sign * a))
                .max()
                .expect("the unperturbed witness is optimal");
            finite(sup)
        };
        TolerancePair::new(side(-1), side(1))
    }
}

fn finite(value: i128) -> Tolerance {
    Tolerance::Finite(u64::try_from(value).expect("tolerance within u64"))
}

fn dfs(
    g: &CapacitatedGraph,
    t: VertexId,
    vertices: &mut Vec<VertexId>,
    edges: &mut Vec<EdgeId>,
    on_path: &mut [bool],
    out: &mut Vec<SimplePath>,
) {
    let x = *vertices.last().expect("path starts at s");
    if x == t {
        out.push(finish(g, vertices, edges));
        return;
    }
    for &e in g.incident(x) {
        let y = g.edge(e).other(x);
        if on_path[y.index()] {
            continue;
        }
        on_path[y.index()] = true;
        vertices.push(y);
        edges.push(e);
        dfs(g, t, vertices, edges, on_path, out);
        edges.pop();
        vertices.pop();
        on_path[y.index()] = false;
    }
}

fn finish(g: &CapacitatedGraph, vertices: &[VertexId], edges: &[EdgeId]) -> SimplePath {
    let min_edge = *edges
        .iter()
        .min_by_key(|&&e| g.order_key(e))
        .expect("s != t");
    let rest_min = edges
        .iter()
        .filter(|&&e| e != min_edge)
        .map(|&e| g.capacity(e) as i128)
        .min()
        .unwrap_or(EMPTY_MIN);
    SimplePath {
        vertices: vertices.to_vec(),
        edges: edges.to_vec(),
        bottleneck: g.capacity(min_edge),
        mask: edges.iter().fold(0u128, |m, e| m | 1 << e.index()),
        min_edge,
        rest_min,
    }
}

/// `b_G(s, t)` and the lexicographic max-min witness path.
pub fn brute_bottleneck(
    g: &CapacitatedGraph,
    s: VertexId,
    t: VertexId,
) -> Result<(Capacity, SimplePath), ReferenceError> {
    let set = enumerate_simple_paths(g, s, t)?;
    let w = set.witness();
    Ok((set.bottleneck(), set.paths[w].clone()))
}

pub fn brute_tolerances(
    g: &CapacitatedGraph,
    s: VertexId,
    t: VertexId,
    e: EdgeId,
) -> Result<TolerancePair, ReferenceError> {
    let set = enumerate_simple_paths(g, s, t)?;
    set.check_edge(e)?;
    Ok(set.tolerances(set.witness(), e, UpperGuard::OptimalValue))
}

/// Whether the witness path of [`brute_bottleneck`] stays optimal after
/// changing `c(e)` by `delta`.
pub fn check_perturbation(
    g: &CapacitatedGraph,
    s: VertexId,
    t: VertexId,
    e: EdgeId,
    delta: i128,
) -> Result<bool, ReferenceError> {
    let set = enumerate_simple_paths(g, s, t)?;
    set.check_edge(e)?;
    Ok(set.perturbation_holds(set.witness(), e, delta))
}

/// Tolerances of `e` by exhaustive perturbation sweep.
pub fn sweep_tolerances(
    g: &CapacitatedGraph,
    s: VertexId,
    t: VertexId,
    e: EdgeId,
) -> Result<TolerancePair, ReferenceError> {
    let set = enumerate_simple_paths(g, s, t)?;
    set.check_edge(e)?;
    Ok(set.sweep(set.witness(), e))
}
