//! Random connected graphs with pairwise distinct capacities.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::graph::{CapacitatedGraph, Capacity, Edge, QueryPair, VertexId};

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum GenerateError {
    #[error(
        "a connected simple graph on {n} vertices needs between {min} and {max} edges, got {m}"
    )]
    InfeasibleEdgeCount {
        n: usize,
        m: usize,
        min: usize,
        max: usize,
    },
    #[error("need at least {needed} distinct capacities, range has {available}")]
    CapacityRangeTooSmall { needed: usize, available: u64 },
}

pub fn max_edges(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Connected simple graph with `n` vertices, `m` edges and distinct
/// capacities drawn from `1..=capacity_max`.
///
/// A random spanning tree (random labels, each vertex attached to an earlier
/// one) is extended with uniformly chosen extra pairs. Edge order is shuffled.
pub fn random_connected_graph<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    capacity_max: Capacity,
    rng: &mut R,
) -> Result<CapacitatedGraph, GenerateError> {
    let (min, max) = (n.saturating_sub(1), max_edges(n));
    if n == 0 || m < min || m > max {
        return Err(GenerateError::InfeasibleEdgeCount { n, m, min, max });
    }
    let available = capacity_max.max(0) as u64;
    if (m as u64) > available {
        return Err(GenerateError::CapacityRangeTooSmall {
            needed: m,
            available,
        });
    }

    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let mut present: HashSet<(usize, usize)> = HashSet::with_capacity(m);
    let mut pairs: Vec<(usize, usize)> = Vec::with_capacity(m);
    let mut add = |a: usize, b: usize, present: &mut HashSet<(usize, usize)>| {
        let key = (a.min(b), a.max(b));
        if present.insert(key) {
            pairs.push(key);
            true
        } else {
            false
        }
    };
    for i in 1..n {
        let j = rng.gen_range(0..i);
        add(labels[i], labels[j], &mut present);
    }
    let extra = m - min;
    if extra > 0 && 2 * m > max {
        // Dense: pick from the explicit complement.
        let mut rest: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|k| !present.contains(k))
            .collect();
        rest.shuffle(rng);
        for &(a, b) in rest.iter().take(extra) {
            add(a, b, &mut present);
        }
    } else {
        let mut added = 0;
        while added < extra {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a != b && add(a, b, &mut present) {
                added += 1;
            }
        }
    }
    pairs.shuffle(rng);

    let capacities = distinct_capacities(m, capacity_max, rng);
    let edges = pairs
        .into_iter()
        .zip(capacities)
        .map(|((a, b), c)| {
            let (u, v) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
            Edge::new(VertexId(u), VertexId(v), c)
        })
        .collect();
    Ok(CapacitatedGraph::new(n, edges).expect("generated ids are in range"))
}

fn distinct_capacities<R: Rng + ?Sized>(
    m: usize,
    capacity_max: Capacity,
    rng: &mut R,
) -> Vec<Capacity> {
    if (capacity_max as u64) <= 4 * m as u64 {
        let mut all: Vec<Capacity> = (1..=capacity_max).collect();
        all.shuffle(rng);
        all.truncate(m);
        return all;
    }
    let mut seen = HashSet::with_capacity(m);
    let mut out = Vec::with_capacity(m);
    while out.len() < m {
        let c = rng.gen_range(1..=capacity_max);
        if seen.insert(c) {
            out.push(c);
        }
    }
    out
}

/// `k` pairs with `s != t`, uniformly at random.
pub fn random_pairs<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Vec<QueryPair> {
    assert!(n >= 2 || k == 0, "pairs need two vertices");
    (0..k)
        .map(|_| loop {
            let s = rng.gen_range(0..n);
            let t = rng.gen_range(0..n);
            if s != t {
                break QueryPair::new(VertexId(s), VertexId(t)).expect("s != t");
            }
        })
        .collect()
}
