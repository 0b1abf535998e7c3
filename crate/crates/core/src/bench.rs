//! Timing harness: random instance, preprocessing time, per-edge query time.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::generate::{random_connected_graph, random_pairs, GenerateError};
use crate::graph::{Capacity, EdgeId};
use crate::oracle::ToleranceOracle;

const CAPACITY_MAX: Capacity = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchConfig {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub queries: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchReport {
    pub config: BenchConfig,
    pub generate: Duration,
    pub preprocess: Duration,
    pub query_total: Duration,
    pub query_mean_ns: f64,
    pub query_p99_ns: u64,
    pub query_max_ns: u64,
    /// Number of finite tolerances seen, so the query loop has an observable
    /// result.
    pub finite_tolerances: u64,
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.config;
        writeln!(f, "n {}", c.n)?;
        writeln!(f, "m {}", c.m)?;
        writeln!(f, "k {}", c.k)?;
        writeln!(f, "queries {}", c.queries)?;
        writeln!(f, "seed {}", c.seed)?;
        writeln!(f, "generate_ms {:.3}", self.generate.as_secs_f64() * 1e3)?;
        writeln!(
            f,
            "preprocess_ms {:.3}",
            self.preprocess.as_secs_f64() * 1e3
        )?;
        writeln!(
            f,
            "query_total_ms {:.3}",
            self.query_total.as_secs_f64() * 1e3
        )?;
        writeln!(f, "query_mean_ns {:.1}", self.query_mean_ns)?;
        writeln!(f, "query_p99_ns {}", self.query_p99_ns)?;
        writeln!(f, "query_max_ns {}", self.query_max_ns)?;
        write!(f, "finite_tolerances {}", self.finite_tolerances)
    }
}

pub fn run_bench(config: BenchConfig) -> Result<BenchReport, GenerateError> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let started = Instant::now();
    let g = random_connected_graph(config.n, config.m, CAPACITY_MAX, &mut rng)?;
    let pairs = if config.n >= 2 {
        random_pairs(config.n, config.k, &mut rng)
    } else {
        Vec::new()
    };
    let edges: Vec<EdgeId> = (0..config.queries)
        .map(|_| EdgeId(rng.gen_range(0..config.m.max(1))))
        .collect();
    let generate = started.elapsed();

    let started = Instant::now();
    let oracle = ToleranceOracle::preprocess(g, &pairs).expect("generated instances are valid");
    let preprocess = started.elapsed();

    let mut buffer = Vec::with_capacity(config.k);
    let mut samples: Vec<u64> = Vec::with_capacity(edges.len());
    let mut finite_tolerances = 0u64;
    let loop_start = Instant::now();
    for &e in &edges {
        let t0 = Instant::now();
        oracle
            .query_edge_into(e, &mut buffer)
            .expect("edge in range");
        samples.push(t0.elapsed().as_nanos() as u64);
        finite_tolerances += buffer
            .iter()
            .map(|p| p.lower.is_finite() as u64 + p.upper.is_finite() as u64)
            .sum::<u64>();
    }
    let query_total = loop_start.elapsed();

    samples.sort_unstable();
    let (mean, p99, max) = if samples.is_empty() {
        (0.0, 0, 0)
    } else {
        let mean = samples.iter().sum::<u64>() as f64 / samples.len() as f64;
        let p99 = samples[((samples.len() * 99).div_ceil(100)).saturating_sub(1)];
        (mean, p99, *samples.last().unwrap())
    };
    Ok(BenchReport {
        config,
        generate,
        preprocess,
        query_total,
        query_mean_ns: mean,
        query_p99_ns: p99,
        query_max_ns: max,
        finite_tolerances,
    })
}
