mod common;

use bottleneck_tolerance::{build_index, build_max_spanning_tree, VertexId};
use common::{min_edge, random_graph, NaiveTree};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn queries_match_naive_walks() {
    let mut rng = ChaCha8Rng::seed_from_u64(201);
    for _ in 0..150 {
        let g = random_graph(&mut rng, 1, 64);
        let tree = build_max_spanning_tree(&g);
        let root = VertexId(rng.gen_range(0..g.vertex_count()));
        let idx = build_index(&tree, &g, root);
        let naive = NaiveTree::new(&g, tree.edges(), root);

        for x in g.vertices() {
            assert_eq!(idx.depth(x), naive.depth[x.index()]);
            assert_eq!(idx.parent(x), naive.parent[x.index()]);
            assert_eq!(idx.parent_edge(x), naive.parent_edge[x.index()]);
        }
        for s in g.vertices() {
            for t in g.vertices() {
                let z = idx.lca(s, t);
                assert_eq!(z, naive.lca(s, t));
                assert_eq!(z, idx.lca(t, s));
                assert!(idx.depth(z) <= idx.depth(s).min(idx.depth(t)));
                assert_eq!(idx.is_ancestor(t, s), idx.lca(s, t) == t);
                if s == t {
                    assert!(idx.path_min_edge(s, t).is_err());
                    continue;
                }
                let path = naive.path(s, t);
                let m = idx.path_min_edge(s, t).unwrap();
                assert_eq!(m, min_edge(&g, &path));
                assert_eq!(m, idx.path_min_edge(t, s).unwrap());
                for &e in tree.edges() {
                    assert_eq!(idx.edge_on_path(e, s, t).unwrap(), path.contains(&e));
                }
            }
        }
    }
}

#[test]
fn lifting_tables_compose() {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    for _ in 0..50 {
        let g = random_graph(&mut rng, 2, 64);
        let tree = build_max_spanning_tree(&g);
        let idx = build_index(&tree, &g, VertexId(0));
        for x in g.vertices() {
            let (anc, edge) = idx.lift(0, x);
            match idx.parent(x) {
                Some(p) => {
                    assert_eq!(anc, p);
                    assert_eq!(edge, idx.parent_edge(x));
                    assert_eq!(idx.depth(x), idx.depth(p) + 1);
                    let pe = g.edge(idx.parent_edge(x).unwrap());
                    assert!(tree.contains(idx.parent_edge(x).unwrap()));
                    assert!((pe.u == x && pe.v == p) || (pe.v == x && pe.u == p));
                }
                None => {
                    assert_eq!(x, idx.root());
                    assert_eq!(idx.depth(x), 0);
                    assert_eq!(edge, None);
                }
            }
            for j in 1..idx.lift_levels() {
                let (mid, first) = idx.lift(j - 1, x);
                let (top, second) = idx.lift(j - 1, mid);
                let (anc, edge) = idx.lift(j, x);
                assert_eq!(anc, top);
                let expected = [first, second]
                    .into_iter()
                    .flatten()
                    .min_by_key(|&e| g.capacity(e));
                if idx.depth(x) >= 1 << j {
                    assert_eq!(edge, expected);
                }
            }
        }
    }
}
