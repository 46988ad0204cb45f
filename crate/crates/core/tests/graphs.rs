use std::collections::VecDeque;

use leeyang::graphs::family::{canonical_code_of, connected_graphs, connected_graphs_up_to, sampled_connected_graphs};
use leeyang::graphs::io::{parse_undirected, to_json};
use leeyang::graphs::{
    add_pendant_vertex, bipartite_double, merge_vertices, path_augment_with, star_augment, PathDoubling,
};
use leeyang::{DirectedWeightedGraph, MultiGraph, Q};
use num::{BigInt, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn connected_graph_counts_through_eight() {
    let counts: Vec<usize> = (1..=8).map(|n| connected_graphs(n).len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 6, 21, 112, 853, 11117]);
}

#[test]
fn canonical_codes_ignore_labels() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 2..=9 {
        for g in sampled_connected_graphs(n, 20, n as u64) {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let pairs: Vec<(usize, usize)> = g.edges().iter().map(|e| (perm[e.u], perm[e.v])).collect();
            let h = MultiGraph::from_pairs(n, &pairs).unwrap();
            assert_eq!(canonical_code_of(&g), canonical_code_of(&h));
        }
    }
}

#[test]
fn json_round_trip() {
    for g in connected_graphs_up_to(5) {
        let text = serde_json::to_string(&to_json(&g)).unwrap();
        assert_eq!(parse_undirected(&text).unwrap(), g);
    }
}

#[test]
fn star_augmentation_counts() {
    let mut corpus = connected_graphs_up_to(6);
    corpus.extend(sampled_connected_graphs(7, 30, 1));
    corpus.extend(sampled_connected_graphs(8, 30, 2));
    for g in &corpus {
        for k in 0..=4 {
            let h = star_augment(g, k);
            assert_eq!(h.n(), g.n() * (1 + k));
            assert_eq!(h.edge_count(), g.edge_count() + g.n() * k);
        }
    }
}

#[test]
fn path_augmentation_keeps_connectivity() {
    for g in connected_graphs_up_to(6) {
        for k in 0..=3 {
            for mode in [
                PathDoubling::None,
                PathDoubling::PathOnly,
                PathDoubling::PathAndConnector,
            ] {
                let h = path_augment_with(&g, k, mode);
                assert!(h.is_connected());
                assert_eq!(h.n(), g.n() * (1 + k));
            }
        }
    }
}

/// `sum_sigma prod_x m[x][sigma(x)]` over all permutations.
fn brute_permanent(m: &[Vec<i64>]) -> BigInt {
    fn rec(m: &[Vec<i64>], row: usize, used: &mut Vec<bool>, acc: i64, total: &mut BigInt) {
        if row == m.len() {
            *total += acc;
            return;
        }
        for c in 0..m.len() {
            if !used[c] && m[row][c] != 0 {
                used[c] = true;
                rec(m, row + 1, used, acc * m[row][c], total);
                used[c] = false;
            }
        }
    }
    let mut total = BigInt::zero();
    rec(m, 0, &mut vec![false; m.len()], 1, &mut total);
    total
}

/// Total weight of perfect matchings by recursion on the lowest unmatched
/// vertex.
fn brute_perfect_matchings(g: &MultiGraph) -> Q {
    fn rec(g: &MultiGraph, matched: &mut Vec<bool>) -> Q {
        let Some(v) = (0..g.n()).find(|&v| !matched[v]) else {
            return Q::from_integer(1.into());
        };
        let mut total = Q::zero();
        matched[v] = true;
        for e in g.edges() {
            if e.is_loop() || (e.u != v && e.v != v) {
                continue;
            }
            let u = e.other(v);
            if !matched[u] {
                matched[u] = true;
                total += &e.weight * rec(g, matched);
                matched[u] = false;
            }
        }
        matched[v] = false;
        total
    }
    rec(g, &mut vec![false; g.n()])
}

#[test]
fn bipartite_double_turns_cycle_covers_into_perfect_matchings() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..300 {
        let n = 1 + trial % 6;
        let mut d = DirectedWeightedGraph::new(n);
        for x in 0..n {
            for y in 0..n {
                if rng.gen_bool(0.45) {
                    d.add_arc(x, y, [-1, 1, 2, 3][rng.gen_range(0..4)]).unwrap();
                }
            }
        }
        let cc = brute_permanent(&d.matrix());
        let pm = brute_perfect_matchings(&bipartite_double(&d));
        assert_eq!(Q::from_integer(cc), pm, "{d:?}");
    }
    // Directed triangle with loops: the 3-cycle and the all-loops cover.
    let d = DirectedWeightedGraph::from_arcs(3, &[(0, 1, 1), (1, 2, 1), (2, 0, 1), (0, 0, 1), (1, 1, 1), (2, 2, 1)])
        .unwrap();
    assert_eq!(
        brute_perfect_matchings(&bipartite_double(&d)),
        Q::from_integer(2.into())
    );
}

/// Builds `g` from one edge by pendant additions along a BFS tree, closing
/// every non-tree edge `ab` by a pendant at `a` merged into `b`.
fn rebuild(g: &MultiGraph) -> MultiGraph {
    let adj = g.neighbor_sets();
    let root = 0;
    let first = *adj[root].iter().next().unwrap();
    let mut h = MultiGraph::from_pairs(2, &[(0, 1)]).unwrap();
    let mut at = vec![usize::MAX; g.n()];
    at[root] = 0;
    at[first] = 1;
    let mut tree = vec![(root, first)];
    let mut queue = VecDeque::from([root, first]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if at[y] == usize::MAX {
                h = add_pendant_vertex(&h, at[x]).unwrap();
                at[y] = h.n() - 1;
                tree.push((x, y));
                queue.push_back(y);
            }
        }
    }
    for e in g.edges() {
        let (a, b) = (e.u, e.v);
        if tree.contains(&(a, b)) || tree.contains(&(b, a)) {
            continue;
        }
        h = add_pendant_vertex(&h, at[a]).unwrap();
        h = merge_vertices(&h, at[b], h.n() - 1).unwrap();
    }
    h
}

#[test]
fn pendant_and_merge_rebuild_small_connected_graphs() {
    let mut checked = 0;
    for g in connected_graphs_up_to(6)
        .into_iter()
        .filter(|g| (1..=5).contains(&g.edge_count()))
    {
        let h = rebuild(&g);
        assert_eq!(h.edge_count(), g.edge_count());
        assert_eq!(canonical_code_of(&h), canonical_code_of(&g));
        checked += 1;
    }
    // Connected graphs with 1, 2, 3, 4, 5 edges: 1 + 1 + 3 + 5 + 12.
    assert_eq!(checked, 22);
}
