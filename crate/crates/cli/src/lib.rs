//! Command implementations behind the `bptol` binary.
//!
//! Output format (bit-exact): integers in decimal, `inf` for an infinite
//! tolerance, single spaces, LF line ends.

use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::Path;

use thiserror::Error;

use bottleneck_tolerance::graph::ParseError;
use bottleneck_tolerance::{
    parse_graph, parse_pairs, validate_with, CapacitatedGraph, EdgeId, OracleError, QueryPair,
    TieBreaking, ToleranceOracle, TolerancePair, VertexId, Violation,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("invalid graph: {0}")]
    Invalid(Violation),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Usage(_) => EXIT_USAGE,
            CliError::Parse { .. } | CliError::Invalid(_) | CliError::Oracle(_) => EXIT_INVALID,
        }
    }
}

fn open(path: &Path) -> Result<BufReader<File>, CliError> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })
}

pub fn read_graph(path: &Path) -> Result<CapacitatedGraph, CliError> {
    parse_graph(open(path)?).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_pairs(path: &Path, n: usize) -> Result<Vec<QueryPair>, CliError> {
    parse_pairs(open(path)?, n).map_err(|source| CliError::Parse {
        path: path.display().to_string(),
        source,
    })
}

pub fn ties(break_ties: bool) -> TieBreaking {
    if break_ties {
        TieBreaking::ByEdgeId
    } else {
        TieBreaking::Reject
    }
}

/// Parses and validates; `Ok(None)` means valid, `Ok(Some(v))` carries the
/// first violation.
pub fn cmd_validate(graph: &Path, break_ties: bool) -> Result<Option<Violation>, CliError> {
    let g = read_graph(graph)?;
    Ok(validate_with(&g, ties(break_ties)).err())
}

pub fn load_oracle(
    graph: &Path,
    pairs: &Path,
    break_ties: bool,
) -> Result<ToleranceOracle, CliError> {
    let g = read_graph(graph)?;
    validate_with(&g, ties(break_ties)).map_err(CliError::Invalid)?;
    let pairs = read_pairs(pairs, g.vertex_count())?;
    ToleranceOracle::preprocess_with(g, &pairs, ties(break_ties)).map_err(CliError::Oracle)
}

/// One line of the streaming protocol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QueryRequest {
    /// `edge <id>`
    Edge(usize),
    /// `<u> <v>`
    Endpoints(usize, usize),
}

impl QueryRequest {
    pub fn parse(line: &str) -> Option<Self> {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["edge", id] => id.parse().ok().map(QueryRequest::Edge),
            [u, v] => Some(QueryRequest::Endpoints(u.parse().ok()?, v.parse().ok()?)),
            _ => None,
        }
    }

    /// The edge this request names in `g`, if it exists.
    pub fn resolve(self, g: &CapacitatedGraph) -> Option<EdgeId> {
        match self {
            QueryRequest::Edge(id) if (1..=g.edge_count()).contains(&id) => {
                Some(EdgeId::from_one_based(id))
            }
            QueryRequest::Edge(_) => None,
            QueryRequest::Endpoints(u, v) => {
                let n = g.vertex_count();
                if !(1..=n).contains(&u) || !(1..=n).contains(&v) {
                    return None;
                }
                g.find_edge(VertexId::from_one_based(u), VertexId::from_one_based(v))
            }
        }
    }
}

/// `i s t lower upper` for the zero-based pair index `i`.
pub fn format_record(i: usize, pair: &QueryPair, tolerances: &TolerancePair) -> String {
    format!(
        "{} {} {} {} {}",
        i + 1,
        pair.s,
        pair.t,
        tolerances.lower,
        tolerances.upper
    )
}

/// Answers one request per input line until EOF.
pub fn serve<R: BufRead, W: Write>(
    oracle: &ToleranceOracle,
    input: R,
    mut output: W,
) -> io::Result<()> {
    let mut answers = Vec::with_capacity(oracle.pair_count());
    for line in input.lines() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match QueryRequest::parse(&line) {
            None => writeln!(output, "error malformed-query")?,
            Some(request) => match request.resolve(oracle.graph()) {
                None => writeln!(output, "error unknown-edge")?,
                Some(e) => {
                    oracle
                        .query_edge_into(e, &mut answers)
                        .expect("resolved edge is in range");
                    for (i, (tol, ctx)) in answers.iter().zip(oracle.contexts()).enumerate() {
                        writeln!(output, "{}", format_record(i, &ctx.pair, tol))?;
                    }
                    writeln!(output)?;
                }
            },
        }
        output.flush()?;
    }
    output.flush()
}

/// Header `n m k`, then `edge i s t lower upper` for every edge and pair.
pub fn write_all<W: Write>(oracle: &ToleranceOracle, mut output: W) -> io::Result<()> {
    let g = oracle.graph();
    writeln!(
        output,
        "{} {} {}",
        g.vertex_count(),
        g.edge_count(),
        oracle.pair_count()
    )?;
    let mut answers = Vec::with_capacity(oracle.pair_count());
    for e in g.edge_ids() {
        oracle
            .query_edge_into(e, &mut answers)
            .expect("edge in range");
        for (i, (tol, ctx)) in answers.iter().zip(oracle.contexts()).enumerate() {
            writeln!(output, "{e} {}", format_record(i, &ctx.pair, tol))?;
        }
    }
    output.flush()
}
