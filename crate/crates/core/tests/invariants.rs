use c2lab_core::graph::families::{circulant, octahedron};
use c2lab_core::graph::{case_graph, emit_graph6, parse_graph6};
use c2lab_core::identities::deletion_contraction_holds;
use c2lab_core::involutions::{r_case_involution_with, s_case_involution, BothIn};
use c2lab_core::partitions::{enumerate_spanning_trees, EdgeBipartition};
use c2lab_core::point_count::kirchhoff_point_count;
use c2lab_core::{c2_direct, Graph, Prime};
use proptest::prelude::*;

const BUDGET: u64 = 1 << 26;

/// A connected simple graph: a random spanning path plus extra chords.
fn connected_graph(max_n: usize, max_edges: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(move |n| {
        let chords: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 2..n).map(move |v| (u, v)))
            .collect();
        let k = chords.len().min(max_edges + 1 - n);
        (Just(n), Just(chords).prop_shuffle(), 0..=k).prop_map(|(n, chords, k)| {
            let mut edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
            edges.extend(chords.into_iter().take(k));
            Graph::new(n, edges).unwrap()
        })
    })
}

fn relabel(g: &Graph, perm: &[usize]) -> Graph {
    Graph::new(
        g.n(),
        g.edges().iter().map(|&(u, v)| (perm[u], perm[v])).collect(),
    )
    .unwrap()
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn point_count_is_divisible_by_p_squared(g in connected_graph(6, 9), p in prop::sample::select(vec![2u64, 3])) {
        let count = kirchhoff_point_count(&g, Prime::new(p).unwrap(), BUDGET).unwrap();
        prop_assert_eq!(count % (p * p), 0);
    }

    #[test]
    fn c2_ignores_vertex_labels((g, perm) in connected_graph(6, 9).prop_flat_map(|g| { let n = g.n(); (Just(g), permutation(n)) })) {
        for p in [2, 3] {
            let p = Prime::new(p).unwrap();
            prop_assert_eq!(c2_direct(&g, p).unwrap(), c2_direct(&relabel(&g, &perm), p).unwrap());
        }
    }

    #[test]
    fn graph6_round_trip(g in connected_graph(10, 30)) {
        let back = parse_graph6(&emit_graph6(&g).unwrap()).unwrap();
        let mut a: Vec<_> = g.edges().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        let mut b: Vec<_> = back.edges().iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        a.sort_unstable();
        b.sort_unstable();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn deletion_contraction_at_random_points(
        (g, e, values) in connected_graph(6, 10).prop_flat_map(|g| {
            let m = g.num_edges();
            (Just(g), 0..m, prop::collection::vec(0u32..5, m))
        })
    ) {
        // Deleting a bridge disconnects the graph, where the identity is not stated.
        prop_assume!(g.delete_edge(e).unwrap().is_connected());
        prop_assert!(deletion_contraction_holds(&g, e, &values, Prime::new(5).unwrap()).unwrap());
    }
}

/// Involutions on every spanning tree of the case graph where they apply.
#[test]
fn involutions_undo_themselves() {
    let s = case_graph(&circulant(7, &[1, 2]), 0, 2).unwrap();
    let mut applied = 0;
    for t in enumerate_spanning_trees(&s.graph, BUDGET).unwrap() {
        let bp = EdgeBipartition::from_tree(&s.graph, t);
        if let Ok((image, _)) = s_case_involution(&s, &bp) {
            let (back, _) = s_case_involution(&s, &image).unwrap();
            assert_eq!(back, bp);
            applied += 1;
        }
    }
    assert!(applied > 0);

    let r = case_graph(&circulant(10, &[1, 3]), 0, 1).unwrap();
    let mut applied = 0;
    for t in enumerate_spanning_trees(&r.graph, BUDGET).unwrap() {
        let bp = EdgeBipartition::from_tree(&r.graph, t);
        if let Ok((image, _)) = r_case_involution_with(&r, &bp, BothIn::SmallerOnly) {
            let (back, _) = r_case_involution_with(&r, &image, BothIn::SmallerOnly).unwrap();
            assert_eq!(back, bp);
            applied += 1;
        }
    }
    assert!(applied > 0);
}

#[test]
fn octahedron_decompletions_share_c2() {
    let g = octahedron();
    for p in [2, 3, 5] {
        let p = Prime::new(p).unwrap();
        let c2: Vec<u32> = (0..6)
            .map(|v| c2_direct(&g.delete_vertices(&[v]).unwrap().graph, p).unwrap())
            .collect();
        assert!(c2.windows(2).all(|w| w[0] == w[1]), "{c2:?}");
    }
}
