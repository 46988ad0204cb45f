//! Small graph corpora: every connected simple graph up to isomorphism for
//! small orders, and seeded random connected graphs for larger ones.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::MultiGraph;

/// Largest order for which canonical forms are computed by brute force over
/// all vertex permutations.
pub const MAX_CANONICAL_N: usize = 9;

fn pair_index(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    // Row-major position of (i, j) in the strict upper triangle.
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Colour refinement: start from degrees and split classes by the multiset
/// of neighbour colours until stable. Colours are ranks of signatures, so
/// they are invariant under relabelling.
fn refined_colours(n: usize, edges: &[(usize, usize)]) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for &(i, j) in edges {
        adj[i].push(j);
        adj[j].push(i);
    }
    let mut colour: Vec<usize> = adj.iter().map(|a| a.len()).collect();
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = adj[v].iter().map(|&u| colour[u]).collect();
                nb.sort_unstable();
                (colour[v], nb)
            })
            .collect();
        let ranks: BTreeSet<&(usize, Vec<usize>)> = sigs.iter().collect();
        let ranks: Vec<_> = ranks.into_iter().collect();
        let next: Vec<usize> = sigs.iter().map(|s| ranks.binary_search(&s).unwrap()).collect();
        let classes = |c: &[usize]| c.iter().collect::<BTreeSet<_>>().len();
        if classes(&next) == classes(&colour) {
            return next;
        }
        colour = next;
    }
}

/// Minimal edge-set code over the relabellings that list vertices by
/// refined colour (all relabellings within each colour class are tried).
pub fn canonical_code(n: usize, edges: &[(usize, usize)]) -> u64 {
    assert!(n <= MAX_CANONICAL_N);
    let colour = refined_colours(n, edges);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (colour[v], v));
    let mut blocks = Vec::new();
    let mut start = 0;
    for i in 1..=n {
        if i == n || colour[order[i]] != colour[order[start]] {
            blocks.push((start, i));
            start = i;
        }
    }
    let mut label = vec![0usize; n];
    let mut best = u64::MAX;
    loop {
        for (pos, &v) in order.iter().enumerate() {
            label[v] = pos;
        }
        let c = edges
            .iter()
            .fold(0u64, |c, &(i, j)| c | 1 << pair_index(n, label[i], label[j]));
        best = best.min(c);
        // Odometer over the blocks, last block fastest.
        let mut advanced = false;
        for &(a, b) in blocks.iter().rev() {
            if next_permutation(&mut order[a..b]) {
                advanced = true;
                break;
            }
            order[a..b].reverse();
        }
        if !advanced {
            return best;
        }
    }
}

fn decode(n: usize, code: u64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if code >> pair_index(n, i, j) & 1 == 1 {
                out.push((i, j));
            }
        }
    }
    out
}

fn simple_edges(g: &MultiGraph) -> Vec<(usize, usize)> {
    let mut set = BTreeSet::new();
    for e in g.edges() {
        if !e.is_loop() {
            set.insert((e.u, e.v));
        }
    }
    set.into_iter().collect()
}

/// Canonical code of the simple graph underlying `g`.
pub fn canonical_code_of(g: &MultiGraph) -> u64 {
    canonical_code(g.n(), &simple_edges(g))
}

/// All connected simple graphs on `n` vertices up to isomorphism, each in
/// its canonical labelling, ordered by canonical code. Grown by adding a
/// vertex to every connected graph on `n - 1` vertices (a connected graph
/// always has a non-cut vertex, so nothing is missed).
pub fn connected_graphs(n: usize) -> Vec<MultiGraph> {
    assert!((1..=8).contains(&n), "exhaustive generation supports 1..=8 vertices");
    let mut codes: BTreeSet<u64> = BTreeSet::new();
    codes.insert(0);
    for m in 2..=n {
        let mut next = BTreeSet::new();
        for &c in &codes {
            let base = decode(m - 1, c);
            for nbrs in 1u32..(1 << (m - 1)) {
                let mut e = base.clone();
                for u in 0..m - 1 {
                    if nbrs >> u & 1 == 1 {
                        e.push((u, m - 1));
                    }
                }
                next.insert(canonical_code(m, &e));
            }
        }
        codes = next;
    }
    codes
        .into_iter()
        .map(|c| MultiGraph::from_pairs(n, &decode(n, c)).expect("valid graph"))
        .collect()
}

/// Every connected graph with `1..=max_n` vertices.
pub fn connected_graphs_up_to(max_n: usize) -> Vec<MultiGraph> {
    (1..=max_n).flat_map(connected_graphs).collect()
}

/// `count` pairwise non-isomorphic random connected graphs on `n` vertices.
/// A random recursive spanning tree is thickened with each remaining pair
/// kept with a per-graph density drawn from `[0.1, 0.7]`.
pub fn sampled_connected_graphs(n: usize, count: usize, seed: u64) -> Vec<MultiGraph> {
    assert!((2..=MAX_CANONICAL_N).contains(&n));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let max_tries = 200 * count.max(1);
    for _ in 0..max_tries {
        if out.len() == count {
            break;
        }
        let mut e = BTreeSet::new();
        for v in 1..n {
            let u = rng.gen_range(0..v);
            e.insert((u, v));
        }
        let density: f64 = rng.gen_range(0.1..0.7);
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(density) {
                    e.insert((i, j));
                }
            }
        }
        let e: Vec<_> = e.into_iter().collect();
        let c = canonical_code(n, &e);
        if seen.insert(c) {
            out.push(MultiGraph::from_pairs(n, &decode(n, c)).expect("valid graph"));
        }
    }
    out
}

/// Uniform-ish random connected simple graph (not deduplicated).
pub fn random_connected_graph(n: usize, density: f64, rng: &mut impl Rng) -> MultiGraph {
    let mut e = BTreeSet::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        e.insert((u, v));
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                e.insert((i, j));
            }
        }
    }
    let e: Vec<_> = e.into_iter().collect();
    MultiGraph::from_pairs(n, &e).expect("valid graph")
}

/// Stable identifier `c<n>-<code>` for a graph in canonical labelling.
pub fn graph_id(g: &MultiGraph) -> String {
    format!("c{}-{:x}", g.n(), canonical_code_of(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connected_graph_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
        assert!(connected_graphs(5).iter().all(|g| g.is_connected()));
    }

    #[test]
    fn canonical_code_is_label_invariant() {
        let a = canonical_code(4, &[(0, 1), (1, 2), (2, 3)]);
        let b = canonical_code(4, &[(2, 0), (0, 3), (3, 1)]);
        let c = canonical_code(4, &[(0, 1), (0, 2), (0, 3)]);
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn sampling_is_seeded_and_deduplicated() {
        let a = sampled_connected_graphs(7, 10, 3);
        let b = sampled_connected_graphs(7, 10, 3);
        assert_eq!(a, b);
        assert_eq!(a.len(), 10);
        let codes: BTreeSet<_> = a.iter().map(canonical_code_of).collect();
        assert_eq!(codes.len(), 10);
        assert!(a.iter().all(|g| g.is_connected()));
    }
}
