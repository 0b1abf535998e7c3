//! Randomized cross-check of the tolerance oracle against the exhaustive
//! reference.
//!
//! Each instance is a random connected graph with distinct capacities. For
//! every unordered vertex pair and every edge the oracle's answer must equal
//! the closed-form reference, every finite tolerance `τ` must be tight under
//! perturbation (`±τ` keeps the path optimal, `±(τ+1)` does not), and every
//! `+inf` must survive a perturbation past the whole capacity range.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::generate::{max_edges, random_connected_graph};
use crate::graph::{CapacitatedGraph, Capacity, EdgeId, QueryPair, VertexId};
use crate::oracle::{Tolerance, ToleranceOracle, TolerancePair};
use crate::reference::{PathSet, UpperGuard, DEFAULT_VERTEX_CAP};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    pub max_n: usize,
    pub instances: usize,
    pub seed: u64,
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum VerifyError {
    #[error("max-n must lie in 2..={cap}, got {max_n}")]
    MaxNOutOfRange { max_n: usize, cap: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Lower,
    Upper,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Lower => "lower",
            Side::Upper => "upper",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FailureKind {
    BottleneckMismatch {
        oracle: Capacity,
        reference: Capacity,
    },
    ToleranceMismatch {
        oracle: TolerancePair,
        reference: TolerancePair,
    },
    Perturbation {
        side: Side,
        delta: i128,
        expected_optimal: bool,
    },
    NonPositive {
        side: Side,
    },
    BothFinite,
}

impl fmt::Display for FailureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailureKind::BottleneckMismatch { oracle, reference } => {
                write!(f, "bottleneck oracle {oracle} reference {reference}")
            }
            FailureKind::ToleranceMismatch { oracle, reference } => write!(
                f,
                "tolerance oracle ({} {}) reference ({} {})",
                oracle.lower, oracle.upper, reference.lower, reference.upper
            ),
            FailureKind::Perturbation {
                side,
                delta,
                expected_optimal,
            } => write!(
                f,
                "perturbation {side} delta {delta}: path expected {} but was not",
                if *expected_optimal {
                    "optimal"
                } else {
                    "suboptimal"
                }
            ),
            FailureKind::NonPositive { side } => {
                write!(f, "finite {side} tolerance is not positive")
            }
            FailureKind::BothFinite => f.write_str("lower and upper both finite"),
        }
    }
}

/// A failing `(graph, pair, edge)` combination.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub pair: QueryPair,
    pub edge: Option<EdgeId>,
    pub kind: FailureKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub instance: usize,
    pub graph: CapacitatedGraph,
    pub failure: Failure,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "instance {}", self.instance)?;
        write!(f, "{}", self.graph.serialize())?;
        write!(f, "pair {} {}", self.failure.pair.s, self.failure.pair.t)?;
        if let Some(e) = self.failure.edge {
            write!(f, " edge {e}")?;
        }
        write!(f, "\n{}", self.failure.kind)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct InstanceStats {
    pub pairs: usize,
    pub records: usize,
    pub finite_lower: usize,
    pub finite_upper: usize,
    pub perturbation_checks: usize,
}

impl InstanceStats {
    fn add(&mut self, other: &InstanceStats) {
        self.pairs += other.pairs;
        self.records += other.records;
        self.finite_lower += other.finite_lower;
        self.finite_upper += other.finite_upper;
        self.perturbation_checks += other.perturbation_checks;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub config: VerifyConfig,
    pub instances: usize,
    pub totals: InstanceStats,
    pub counterexample: Option<Counterexample>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "result {}", if self.passed() { "pass" } else { "fail" })?;
        writeln!(f, "max_n {}", self.config.max_n)?;
        writeln!(f, "seed {}", self.config.seed)?;
        writeln!(f, "instances {}", self.instances)?;
        writeln!(f, "pairs {}", self.totals.pairs)?;
        writeln!(f, "records {}", self.totals.records)?;
        writeln!(f, "finite_lower {}", self.totals.finite_lower)?;
        writeln!(f, "finite_upper {}", self.totals.finite_upper)?;
        write!(f, "perturbation_checks {}", self.totals.perturbation_checks)?;
        if let Some(cx) = &self.counterexample {
            write!(f, "\ncounterexample\n{cx}")?;
        }
        Ok(())
    }
}

/// The graph used for instance `index` of a run seeded with `seed`.
pub fn instance_graph(max_n: usize, seed: u64, index: usize) -> CapacitatedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    let n = rng.gen_range(2..=max_n);
    let m = rng.gen_range(n - 1..=max_edges(n));
    random_connected_graph(n, m, 4 * m as Capacity, &mut rng).expect("feasible by construction")
}

pub fn run_verification(config: VerifyConfig) -> Result<VerifyReport, VerifyError> {
    if !(2..=DEFAULT_VERTEX_CAP).contains(&config.max_n) {
        return Err(VerifyError::MaxNOutOfRange {
            max_n: config.max_n,
            cap: DEFAULT_VERTEX_CAP,
        });
    }
    let outcomes: Vec<(usize, Result<InstanceStats, Failure>)> = (0..config.instances)
        .into_par_iter()
        .map(|i| {
            let g = instance_graph(config.max_n, config.seed, i);
            (i, verify_graph(&g, None))
        })
        .collect();

    let mut totals = InstanceStats::default();
    let mut counterexample = None;
    for (i, outcome) in outcomes {
        match outcome {
            Ok(stats) => totals.add(&stats),
            Err(failure) => {
                counterexample = Some(Counterexample {
                    instance: i,
                    graph: instance_graph(config.max_n, config.seed, i),
                    failure,
                });
                break;
            }
        }
    }
    Ok(VerifyReport {
        config,
        instances: config.instances,
        totals,
        counterexample,
    })
}

/// Checks every edge of `g` against the reference for `pairs`, or for every
/// unordered vertex pair when `pairs` is `None`. `g` must be valid and small
/// enough for exhaustive enumeration.
pub fn verify_graph(
    g: &CapacitatedGraph,
    pairs: Option<&[QueryPair]>,
) -> Result<InstanceStats, Failure> {
    let all_pairs: Vec<QueryPair>;
    let pairs = match pairs {
        Some(p) => p,
        None => {
            let n = g.vertex_count();
            all_pairs = (0..n)
                .flat_map(|s| (s + 1..n).map(move |t| (s, t)))
                .map(|(s, t)| QueryPair::new(VertexId(s), VertexId(t)).expect("s < t"))
                .collect();
            &all_pairs
        }
    };
    let oracle = ToleranceOracle::preprocess(g.clone(), pairs).expect("valid instance");
    let mut stats = InstanceStats::default();
    for (i, &pair) in pairs.iter().enumerate() {
        let fail = |edge, kind| Failure { pair, edge, kind };
        let set = PathSet::enumerate_capped(g, pair.s, pair.t, DEFAULT_VERTEX_CAP)
            .expect("instance within the enumeration cap");
        let w = set.witness();
        let value = oracle.bottleneck_value(i).expect("pair in range");
        if value != set.bottleneck() {
            return Err(fail(
                None,
                FailureKind::BottleneckMismatch {
                    oracle: value,
                    reference: set.bottleneck(),
                },
            ));
        }
        stats.pairs += 1;
        let saturation = set.saturation_delta();
        for e in g.edge_ids() {
            let got = oracle.query_edge_for_pair(e, i).expect("edge in range");
            let want = set.tolerances(w, e, UpperGuard::OptimalValue);
            if got != want {
                return Err(fail(
                    Some(e),
                    FailureKind::ToleranceMismatch {
                        oracle: got,
                        reference: want,
                    },
                ));
            }
            if got.lower.is_finite() && got.upper.is_finite() {
                return Err(fail(Some(e), FailureKind::BothFinite));
            }
            for (side, tol, sign) in [
                (Side::Lower, got.lower, -1i128),
                (Side::Upper, got.upper, 1),
            ] {
                let checks: Vec<(i128, bool)> = match tol {
                    Tolerance::Finite(0) => {
                        return Err(fail(Some(e), FailureKind::NonPositive { side }))
                    }
                    Tolerance::Finite(t) => {
                        match side {
                            Side::Lower => stats.finite_lower += 1,
                            Side::Upper => stats.finite_upper += 1,
                        }
                        vec![(t as i128, true), (t as i128 + 1, false)]
                    }
                    Tolerance::Infinite => vec![(saturation, true)],
                };
                for (magnitude, expected_optimal) in checks {
                    let delta = sign * magnitude;
                    stats.perturbation_checks += 1;
                    if set.perturbation_holds(w, e, delta) != expected_optimal {
                        return Err(fail(
                            Some(e),
                            FailureKind::Perturbation {
                                side,
                                delta,
                                expected_optimal,
                            },
                        ));
                    }
                }
            }
            stats.records += 1;
        }
    }
    Ok(stats)
}
