//! Edge-capacitated undirected graphs, their text format, and validation.
//!
//! Vertex and edge ids are zero-based inside the library and one-based in
//! every external representation (files, `Display`).

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::io::BufRead;

use thiserror::Error;

/// Edge capacity. Only comparisons, subtraction and min/max are ever applied.
pub type Capacity = i64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub usize);

impl VertexId {
    /// Builds an id from the 1-based numbering used in files.
    pub fn from_one_based(index: usize) -> Self {
        assert!(index >= 1, "vertex ids are 1-based");
        VertexId(index - 1)
    }

    pub fn index(self) -> usize {
        self.0
    }

    pub fn one_based(self) -> usize {
        self.0 + 1
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.one_based())
    }
}

/// Edge identifier; edge `i` is the `i`-th edge line of the graph file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub usize);

impl EdgeId {
    pub fn from_one_based(index: usize) -> Self {
        assert!(index >= 1, "edge ids are 1-based");
        EdgeId(index - 1)
    }

    pub fn index(self) -> usize {
        self.0
    }

    pub fn one_based(self) -> usize {
        self.0 + 1
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.one_based())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub capacity: Capacity,
}

impl Edge {
    pub fn new(u: VertexId, v: VertexId, capacity: Capacity) -> Self {
        Edge { u, v, capacity }
    }

    /// The endpoint opposite to `x`.
    pub fn other(&self, x: VertexId) -> VertexId {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// A source/target pair. `s != t` is enforced at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QueryPair {
    pub s: VertexId,
    pub t: VertexId,
}

impl QueryPair {
    pub fn new(s: VertexId, t: VertexId) -> Result<Self, GraphError> {
        if s == t {
            return Err(GraphError::DegeneratePair { vertex: s });
        }
        Ok(QueryPair { s, t })
    }

    pub fn from_one_based(s: usize, t: usize) -> Result<Self, GraphError> {
        if s == 0 || t == 0 {
            return Err(GraphError::VertexOutOfRange {
                vertex: s.min(t),
                n: 0,
            });
        }
        Self::new(VertexId::from_one_based(s), VertexId::from_one_based(t))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("source and target coincide at vertex {vertex}")]
    DegeneratePair { vertex: VertexId },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("malformed line, expected {expected}")]
    Malformed { expected: &'static str },
    #[error("`{token}` is not an integer")]
    NotAnInteger { token: String },
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: i64, n: usize },
    #[error("edge {u} {v} repeats the endpoint pair of edge {first}")]
    ParallelEdge { u: usize, v: usize, first: EdgeId },
    #[error("source and target coincide at vertex {vertex}")]
    DegeneratePair { vertex: usize },
    #[error("expected {expected} more lines, found end of input")]
    UnexpectedEof { expected: usize },
    #[error("unexpected trailing content")]
    TrailingContent,
    #[error("read failed: {message}")]
    Io { message: String },
}

/// The first property a graph violates, with a witness.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Violation {
    #[error("self-loop: edge {edge} joins vertex {vertex} to itself")]
    SelfLoop { edge: EdgeId, vertex: VertexId },
    #[error("parallel edges: edges {first} and {second} join the same vertices")]
    ParallelEdge { first: EdgeId, second: EdgeId },
    #[error("disconnected: vertex {unreached} is not reachable from vertex {reached}")]
    Disconnected {
        reached: VertexId,
        unreached: VertexId,
    },
    #[error("duplicate capacity {capacity} on edges {first} and {second}")]
    DuplicateCapacity {
        capacity: Capacity,
        first: EdgeId,
        second: EdgeId,
    },
}

/// How equal capacities are treated by [`validate_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreaking {
    /// Equal capacities are a violation.
    #[default]
    Reject,
    /// Capacities are ordered by `(capacity, EdgeId)`. Results then hold for an
    /// infinitesimally perturbed instance.
    ByEdgeId,
}

/// Simple undirected graph with capacitated edges.
///
/// The constructor only checks vertex bounds; use [`validate`] for the
/// simplicity, connectivity and injectivity requirements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapacitatedGraph {
    n: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<EdgeId>>,
}

impl CapacitatedGraph {
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self, GraphError> {
        let mut adjacency = vec![Vec::new(); n];
        for (i, edge) in edges.iter().enumerate() {
            for x in [edge.u, edge.v] {
                if x.index() >= n {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: x.one_based(),
                        n,
                    });
                }
            }
            adjacency[edge.u.index()].push(EdgeId(i));
            if edge.u != edge.v {
                adjacency[edge.v.index()].push(EdgeId(i));
            }
        }
        Ok(CapacitatedGraph {
            n,
            edges,
            adjacency,
        })
    }

    /// Convenience constructor from 1-based `(u, v, c)` triples.
    pub fn from_triples(
        n: usize,
        triples: &[(usize, usize, Capacity)],
    ) -> Result<Self, GraphError> {
        let mut edges = Vec::with_capacity(triples.len());
        for &(u, v, c) in triples {
            for x in [u, v] {
                if x == 0 || x > n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            edges.push(Edge::new(
                VertexId::from_one_based(u),
                VertexId::from_one_based(v),
                c,
            ));
        }
        Self::new(n, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.index()]
    }

    pub fn capacity(&self, e: EdgeId) -> Capacity {
        self.edges[e.index()].capacity
    }

    /// Total order on edges used by every algorithm in this crate.
    #[inline]
    pub fn order_key(&self, e: EdgeId) -> (Capacity, EdgeId) {
        (self.edges[e.index()].capacity, e)
    }

    pub fn incident(&self, x: VertexId) -> &[EdgeId] {
        &self.adjacency[x.index()]
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).map(EdgeId)
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.n).map(VertexId)
    }

    /// Finds the edge joining `u` and `v`, if any.
    pub fn find_edge(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        if u.index() >= self.n || v.index() >= self.n {
            return None;
        }
        let (probe, other) = if self.adjacency[u.index()].len() <= self.adjacency[v.index()].len() {
            (u, v)
        } else {
            (v, u)
        };
        self.adjacency[probe.index()]
            .iter()
            .copied()
            .find(|&e| self.edge(e).other(probe) == other)
    }

    pub fn contains_pair(&self, pair: &QueryPair) -> bool {
        pair.s.index() < self.n && pair.t.index() < self.n
    }

    /// Writes the graph in the text format accepted by [`parse_graph`].
    pub fn serialize(&self) -> String {
        let mut out = format!("{} {}\n", self.n, self.edges.len());
        for edge in &self.edges {
            out.push_str(&format!("{} {} {}\n", edge.u, edge.v, edge.capacity));
        }
        out
    }
}

/// Checks simplicity, connectivity and (strict) capacity injectivity.
pub fn validate(g: &CapacitatedGraph) -> Result<(), Violation> {
    validate_with(g, TieBreaking::Reject)
}

pub fn validate_with(g: &CapacitatedGraph, ties: TieBreaking) -> Result<(), Violation> {
    for (i, edge) in g.edges().iter().enumerate() {
        if edge.u == edge.v {
            return Err(Violation::SelfLoop {
                edge: EdgeId(i),
                vertex: edge.u,
            });
        }
    }

    let mut seen: HashMap<(VertexId, VertexId), EdgeId> = HashMap::with_capacity(g.edge_count());
    for (i, edge) in g.edges().iter().enumerate() {
        let key = (edge.u.min(edge.v), edge.u.max(edge.v));
        if let Some(&first) = seen.get(&key) {
            return Err(Violation::ParallelEdge {
                first,
                second: EdgeId(i),
            });
        }
        seen.insert(key, EdgeId(i));
    }

    if g.vertex_count() > 0 {
        let reached = reachable_from(g, VertexId(0));
        if let Some(unreached) = reached.iter().position(|&r| !r) {
            return Err(Violation::Disconnected {
                reached: VertexId(0),
                unreached: VertexId(unreached),
            });
        }
    }

    if ties == TieBreaking::Reject {
        let mut by_capacity: Vec<EdgeId> = g.edge_ids().collect();
        by_capacity.sort_unstable_by_key(|&e| g.order_key(e));
        for w in by_capacity.windows(2) {
            if g.capacity(w[0]) == g.capacity(w[1]) {
                return Err(Violation::DuplicateCapacity {
                    capacity: g.capacity(w[0]),
                    first: w[0],
                    second: w[1],
                });
            }
        }
    }
    Ok(())
}

fn reachable_from(g: &CapacitatedGraph, start: VertexId) -> Vec<bool> {
    let mut reached = vec![false; g.vertex_count()];
    let mut queue = VecDeque::from([start]);
    reached[start.index()] = true;
    while let Some(x) = queue.pop_front() {
        for &e in g.incident(x) {
            let y = g.edge(e).other(x);
            if !reached[y.index()] {
                reached[y.index()] = true;
                queue.push_back(y);
            }
        }
    }
    reached
}

/// Line reader that tracks 1-based line numbers and skips nothing.
struct Lines<R> {
    inner: std::io::Lines<R>,
    line: usize,
}

impl<R: BufRead> Lines<R> {
    fn new(reader: R) -> Self {
        Lines {
            inner: reader.lines(),
            line: 0,
        }
    }

    fn next_line(&mut self, remaining: usize) -> Result<String, ParseError> {
        self.line += 1;
        match self.inner.next() {
            Some(Ok(text)) => Ok(text),
            Some(Err(err)) => Err(ParseError {
                line: self.line,
                kind: ParseErrorKind::Io {
                    message: err.to_string(),
                },
            }),
            None => Err(ParseError {
                line: self.line,
                kind: ParseErrorKind::UnexpectedEof {
                    expected: remaining,
                },
            }),
        }
    }

    /// Only blank lines may follow the declared content.
    fn expect_end(&mut self) -> Result<(), ParseError> {
        for text in self.inner.by_ref() {
            self.line += 1;
            let text = text.map_err(|err| ParseError {
                line: self.line,
                kind: ParseErrorKind::Io {
                    message: err.to_string(),
                },
            })?;
            if !text.trim().is_empty() {
                return Err(ParseError {
                    line: self.line,
                    kind: ParseErrorKind::TrailingContent,
                });
            }
        }
        Ok(())
    }

    fn error(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            line: self.line,
            kind,
        }
    }
}

fn parse_fields<const N: usize>(
    text: &str,
    expected: &'static str,
    line: usize,
) -> Result<[i64; N], ParseError> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.len() != N {
        return Err(ParseError {
            line,
            kind: ParseErrorKind::Malformed { expected },
        });
    }
    let mut out = [0i64; N];
    for (slot, token) in out.iter_mut().zip(tokens) {
        *slot = token.parse().map_err(|_| ParseError {
            line,
            kind: ParseErrorKind::NotAnInteger {
                token: token.to_string(),
            },
        })?;
    }
    Ok(out)
}

fn parse_count(value: i64, line: usize, expected: &'static str) -> Result<usize, ParseError> {
    usize::try_from(value).map_err(|_| ParseError {
        line,
        kind: ParseErrorKind::Malformed { expected },
    })
}

fn parse_vertex(value: i64, n: usize, line: usize) -> Result<VertexId, ParseError> {
    if value < 1 || value as u64 > n as u64 {
        return Err(ParseError {
            line,
            kind: ParseErrorKind::VertexOutOfRange { vertex: value, n },
        });
    }
    Ok(VertexId::from_one_based(value as usize))
}

/// Parses the graph file format: a header `n m` followed by `m` lines `u v c`.
///
/// Parallel edges are rejected here; connectivity and capacity injectivity are
/// left to [`validate`].
pub fn parse_graph<R: BufRead>(reader: R) -> Result<CapacitatedGraph, ParseError> {
    const HEADER: &str = "`n m`";
    const EDGE: &str = "`u v c`";
    let mut lines = Lines::new(reader);
    let header = lines.next_line(1)?;
    let [n, m] = parse_fields::<2>(&header, HEADER, lines.line)?;
    let n = parse_count(n, lines.line, HEADER)?;
    let m = parse_count(m, lines.line, HEADER)?;

    let mut edges = Vec::with_capacity(m.min(1 << 24));
    let mut seen: HashMap<(VertexId, VertexId), EdgeId> = HashMap::new();
    for i in 0..m {
        let text = lines.next_line(m - i)?;
        let [u, v, c] = parse_fields::<3>(&text, EDGE, lines.line)?;
        let u = parse_vertex(u, n, lines.line)?;
        let v = parse_vertex(v, n, lines.line)?;
        let key = (u.min(v), u.max(v));
        if let Some(&first) = seen.get(&key) {
            return Err(lines.error(ParseErrorKind::ParallelEdge {
                u: u.one_based(),
                v: v.one_based(),
                first,
            }));
        }
        seen.insert(key, EdgeId(i));
        edges.push(Edge::new(u, v, c));
    }
    lines.expect_end()?;
    Ok(CapacitatedGraph::new(n, edges).expect("vertex ids checked while parsing"))
}

pub fn parse_graph_str(text: &str) -> Result<CapacitatedGraph, ParseError> {
    parse_graph(text.as_bytes())
}

/// Parses the pairs file format: a header `k` followed by `k` lines `s t`.
/// Vertex ids are checked against `n`.
pub fn parse_pairs<R: BufRead>(reader: R, n: usize) -> Result<Vec<QueryPair>, ParseError> {
    let mut lines = Lines::new(reader);
    let header = lines.next_line(1)?;
    let [k] = parse_fields::<1>(&header, "`k`", lines.line)?;
    let k = parse_count(k, lines.line, "`k`")?;
    let mut pairs = Vec::with_capacity(k.min(1 << 24));
    for i in 0..k {
        let text = lines.next_line(k - i)?;
        let [s, t] = parse_fields::<2>(&text, "`s t`", lines.line)?;
        let s = parse_vertex(s, n, lines.line)?;
        let t = parse_vertex(t, n, lines.line)?;
        let pair = QueryPair::new(s, t).map_err(|_| {
            lines.error(ParseErrorKind::DegeneratePair {
                vertex: s.one_based(),
            })
        })?;
        pairs.push(pair);
    }
    lines.expect_end()?;
    Ok(pairs)
}

pub fn serialize_pairs(pairs: &[QueryPair]) -> String {
    let mut out = format!("{}\n", pairs.len());
    for p in pairs {
        out.push_str(&format!("{} {}\n", p.s, p.t));
    }
    out
}

/// Small graphs shared by tests and documentation.
pub mod fixtures {
    use super::{CapacitatedGraph, EdgeId};

    /// Triangle: e1=(1,2,5), e2=(2,3,3), e3=(1,3,1).
    pub fn g1() -> CapacitatedGraph {
        CapacitatedGraph::from_triples(3, &[(1, 2, 5), (2, 3, 3), (1, 3, 1)]).unwrap()
    }

    /// Four vertices: f1=(1,2,10), f2=(2,3,8), f3=(3,4,6), f4=(1,3,4), f5=(2,4,2).
    pub fn g2() -> CapacitatedGraph {
        CapacitatedGraph::from_triples(4, &[(1, 2, 10), (2, 3, 8), (3, 4, 6), (1, 3, 4), (2, 4, 2)])
            .unwrap()
    }

    /// Single edge (1,2,7).
    pub fn k2() -> CapacitatedGraph {
        CapacitatedGraph::from_triples(2, &[(1, 2, 7)]).unwrap()
    }

    /// Shorthand for the 1-based edge names used with the fixtures.
    pub fn e(index: usize) -> EdgeId {
        EdgeId::from_one_based(index)
    }
}
