mod common;

use bottleneck_tolerance::generate::random_pairs;
use bottleneck_tolerance::reference::{enumerate_simple_paths, PathSet, UpperGuard};
use bottleneck_tolerance::verify::verify_graph;
use bottleneck_tolerance::{
    CapacitatedGraph, Edge, QueryPair, Tolerance, ToleranceOracle, TolerancePair, VertexId,
};
use common::random_graph;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn all_pairs(n: usize) -> Vec<QueryPair> {
    (0..n)
        .flat_map(|s| (0..n).filter(move |&t| t != s).map(move |t| (s, t)))
        .map(|(s, t)| QueryPair::new(VertexId(s), VertexId(t)).unwrap())
        .collect()
}

/// Oracle answers equal the closed-form reference for every edge and every
/// ordered pair.
fn assert_matches_reference(g: &CapacitatedGraph) {
    let pairs = all_pairs(g.vertex_count());
    let oracle = ToleranceOracle::preprocess(g.clone(), &pairs).unwrap();
    for (i, p) in pairs.iter().enumerate() {
        let set = enumerate_simple_paths(g, p.s, p.t).unwrap();
        assert_eq!(oracle.bottleneck_value(i).unwrap(), set.bottleneck());
        for e in g.edge_ids() {
            let want = set.tolerances(set.witness(), e, UpperGuard::OptimalValue);
            let got = oracle.query_edge_for_pair(e, i).unwrap();
            assert_eq!(got, want, "{}pair {} {} edge {e}", g.serialize(), p.s, p.t);
        }
    }
}

#[test]
fn random_graphs_match_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(401);
    for _ in 0..500 {
        assert_matches_reference(&random_graph(&mut rng, 2, 8));
    }
}

/// Every connected simple graph on up to five labelled vertices, each with
/// random distinct capacities.
#[test]
fn exhaustive_small_graphs_match_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(402);
    let mut checked = 0;
    for n in 2..=5 {
        let slots: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .collect();
        for mask in 1u32..(1 << slots.len()) {
            let chosen: Vec<(usize, usize)> = slots
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &s)| s)
                .collect();
            let mut caps: Vec<i64> = (1..=3 * chosen.len() as i64).collect();
            caps.shuffle(&mut rng);
            let edges = chosen
                .iter()
                .zip(&caps)
                .map(|(&(a, b), &c)| Edge::new(VertexId(a), VertexId(b), c))
                .collect();
            let g = CapacitatedGraph::new(n, edges).unwrap();
            if bottleneck_tolerance::validate(&g).is_err() {
                continue;
            }
            assert_matches_reference(&g);
            checked += 1;
        }
    }
    // connected labelled graphs on 2..=5 vertices: 1 + 4 + 38 + 728
    assert_eq!(checked, 771);
}

#[test]
fn finite_tolerances_are_tight_under_perturbation() {
    let mut rng = ChaCha8Rng::seed_from_u64(403);
    for _ in 0..100 {
        let g = random_graph(&mut rng, 2, 8);
        let stats = verify_graph(&g, None).unwrap_or_else(|f| panic!("{}{f:?}", g.serialize()));
        assert!(stats.perturbation_checks >= stats.records);
    }
}

#[test]
fn sweep_agrees_with_formulas_and_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    for _ in 0..60 {
        let g = random_graph(&mut rng, 2, 6);
        let pairs = all_pairs(g.vertex_count());
        let oracle = ToleranceOracle::preprocess(g.clone(), &pairs).unwrap();
        for (i, p) in pairs.iter().enumerate() {
            let set = PathSet::enumerate_capped(&g, p.s, p.t, 12).unwrap();
            for e in g.edge_ids() {
                let swept = set.sweep(set.witness(), e);
                assert_eq!(
                    swept,
                    set.tolerances(set.witness(), e, UpperGuard::OptimalValue)
                );
                assert_eq!(swept, oracle.query_edge_for_pair(e, i).unwrap());
            }
        }
    }
}

#[test]
fn finite_values_positive_and_exclusive() {
    let mut rng = ChaCha8Rng::seed_from_u64(405);
    for _ in 0..200 {
        let g = random_graph(&mut rng, 2, 30);
        let pairs = random_pairs(g.vertex_count(), 20, &mut rng);
        let oracle = ToleranceOracle::preprocess(g.clone(), &pairs).unwrap();
        for e in g.edge_ids() {
            for TolerancePair { lower, upper } in oracle.query_edge(e).unwrap() {
                assert!(!(lower.is_finite() && upper.is_finite()));
                for t in [lower, upper] {
                    assert_ne!(t, Tolerance::Finite(0));
                }
            }
        }
    }
}

/// The closed form's finite values use only the optimum, the best path
/// avoiding `e` and `c(e)`, so every optimal witness gives the same finite
/// numbers.
#[test]
fn finite_formula_values_do_not_depend_on_witness() {
    let mut rng = ChaCha8Rng::seed_from_u64(406);
    for _ in 0..200 {
        let g = random_graph(&mut rng, 2, 7);
        for s in g.vertices() {
            for t in g.vertices().filter(|&t| t > s) {
                let set = enumerate_simple_paths(&g, s, t).unwrap();
                for e in g.edge_ids() {
                    let values: Vec<TolerancePair> = set
                        .optimal_paths()
                        .into_iter()
                        .map(|w| set.tolerances(w, e, UpperGuard::OptimalValue))
                        .collect();
                    for side in [|p: &TolerancePair| p.lower, |p: &TolerancePair| p.upper] {
                        let mut finite: Vec<u64> =
                            values.iter().filter_map(|p| side(p).finite()).collect();
                        finite.dedup();
                        assert!(finite.len() <= 1);
                    }
                }
            }
        }
    }
}

#[test]
fn repeated_queries_are_identical() {
    let mut rng = ChaCha8Rng::seed_from_u64(407);
    let g = random_graph(&mut rng, 30, 40);
    let pairs = random_pairs(g.vertex_count(), 50, &mut rng);
    let oracle = ToleranceOracle::preprocess(g.clone(), &pairs).unwrap();
    for e in g.edge_ids() {
        assert_eq!(oracle.query_edge(e).unwrap(), oracle.query_edge(e).unwrap());
    }
}

/// Shared read-only queries from several threads agree with a serial run.
#[test]
fn concurrent_queries_match_serial() {
    let mut rng = ChaCha8Rng::seed_from_u64(408);
    let g = random_graph(&mut rng, 200, 400);
    let pairs = random_pairs(g.vertex_count(), 64, &mut rng);
    let oracle = ToleranceOracle::preprocess(g.clone(), &pairs).unwrap();
    let serial: Vec<Vec<TolerancePair>> = g
        .edge_ids()
        .map(|e| oracle.query_edge(e).unwrap())
        .collect();
    let threads = 8;
    let results: Vec<Vec<(usize, Vec<TolerancePair>)>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..threads)
            .map(|w| {
                let oracle = &oracle;
                let g = &g;
                scope.spawn(move || {
                    g.edge_ids()
                        .filter(|e| e.index() % threads == w)
                        .map(|e| (e.index(), oracle.query_edge(e).unwrap()))
                        .collect()
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut seen = 0;
    for (i, answers) in results.into_iter().flatten() {
        assert_eq!(answers, serial[i]);
        seen += 1;
    }
    assert_eq!(seen, g.edge_count());
}

#[test]
fn multi_pair_fixture() {
    use bottleneck_tolerance::graph::fixtures::{e, g2};
    let g = g2();
    let pairs = [
        QueryPair::from_one_based(1, 4).unwrap(),
        QueryPair::from_one_based(2, 3).unwrap(),
    ];
    let oracle = ToleranceOracle::preprocess(g.clone(), &pairs).unwrap();
    assert_eq!(oracle.contexts()[1].bottleneck_edge, e(2));
    let answers = oracle.query_edge(e(1)).unwrap();
    for (i, p) in pairs.iter().enumerate() {
        let set = enumerate_simple_paths(&g, p.s, p.t).unwrap();
        assert_eq!(
            answers[i],
            set.tolerances(set.witness(), e(1), UpperGuard::OptimalValue)
        );
    }
    // f1 lies on 1-2-3-4 only: lower 10 - min(4, 6) = 6 there, +inf for (2,3).
    assert_eq!(
        answers[0],
        TolerancePair::new(Tolerance::Finite(6), Tolerance::Infinite)
    );
    assert_eq!(
        answers[1],
        TolerancePair::new(Tolerance::Infinite, Tolerance::Infinite)
    );
}

#[test]
fn tie_breaking_matches_perturbed_instance() {
    // Equal capacities ordered by edge id behave like c + id * epsilon.
    let mut rng = ChaCha8Rng::seed_from_u64(409);
    for _ in 0..100 {
        let g = random_graph(&mut rng, 2, 7);
        let m = g.edge_count() as i64;
        let coarse: Vec<Edge> = g
            .edges()
            .iter()
            .map(|x| Edge::new(x.u, x.v, x.capacity / 3))
            .collect();
        let tied = CapacitatedGraph::new(g.vertex_count(), coarse.clone()).unwrap();
        let scaled: Vec<Edge> = coarse
            .iter()
            .enumerate()
            .map(|(i, x)| Edge::new(x.u, x.v, x.capacity * (m + 1) + i as i64))
            .collect();
        let scaled = CapacitatedGraph::new(g.vertex_count(), scaled).unwrap();
        let pairs = all_pairs(g.vertex_count());
        let a = ToleranceOracle::preprocess_with(
            tied,
            &pairs,
            bottleneck_tolerance::TieBreaking::ByEdgeId,
        )
        .unwrap();
        let b = ToleranceOracle::preprocess(scaled, &pairs).unwrap();
        assert_eq!(a.tree(), b.tree());
        assert_eq!(a.tables(), b.tables());
        for (x, y) in a.contexts().iter().zip(b.contexts()) {
            assert_eq!(x.bottleneck_edge, y.bottleneck_edge);
        }
        // finiteness pattern survives the infinitesimal perturbation
        for e in g.edge_ids() {
            for (p, q) in a
                .query_edge(e)
                .unwrap()
                .iter()
                .zip(b.query_edge(e).unwrap())
            {
                assert_eq!(p.lower.is_finite(), q.lower.is_finite());
                assert_eq!(p.upper.is_finite(), q.upper.is_finite());
            }
        }
    }
}
