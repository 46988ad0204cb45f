//! Graph types and the surgeries the pipelines are built from.

mod directed;
pub mod family;
mod hamilton;
pub mod io;

pub use directed::DirectedWeightedGraph;
pub use hamilton::hamiltonian_path;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: Q,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }

    pub fn other(&self, x: usize) -> usize {
        if self.u == x {
            self.v
        } else {
            self.u
        }
    }
}

/// Undirected multigraph on vertices `0..n` with rational edge weights.
///
/// Parallel edges and self-loops are allowed. Edges keep their insertion
/// order so that everything computed from a graph is reproducible. Weights
/// must be nonzero; models that need positive weights check for it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<Edge>,
    connected: bool,
}

impl MultiGraph {
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInput("graphs must have at least one vertex".into()));
        }
        let mut norm = Vec::with_capacity(edges.len());
        for e in edges {
            if e.u >= n || e.v >= n {
                return Err(Error::InvalidInput(format!(
                    "edge ({}, {}) has an endpoint outside 0..{n}",
                    e.u, e.v
                )));
            }
            if e.weight.is_zero() {
                return Err(Error::InvalidInput(format!("edge ({}, {}) has weight 0", e.u, e.v)));
            }
            let (u, v) = if e.u <= e.v { (e.u, e.v) } else { (e.v, e.u) };
            norm.push(Edge { u, v, weight: e.weight });
        }
        let connected = compute_connected(n, &norm);
        Ok(MultiGraph {
            n,
            edges: norm,
            connected,
        })
    }

    /// Unit-weight graph from vertex pairs.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Self::new(n, pairs.iter().map(|&(u, v)| Edge { u, v, weight: Q::one() }).collect())
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::from_pairs(n, &[])
    }

    pub fn path(n: usize) -> Result<Self> {
        let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_pairs(n, &pairs)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        let mut pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        pairs.push((n - 1, 0));
        Self::from_pairs(n, &pairs)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                pairs.push((u, v));
            }
        }
        Self::from_pairs(n, &pairs)
    }

    pub fn star(leaves: usize) -> Result<Self> {
        let pairs: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Self::from_pairs(leaves + 1, &pairs)
    }

    /// Disjoint union; the vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &MultiGraph) -> MultiGraph {
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| Edge {
            u: e.u + self.n,
            v: e.v + self.n,
            weight: e.weight.clone(),
        }));
        MultiGraph::new(self.n + other.n, edges).expect("union of valid graphs")
    }

    pub fn with_uniform_weight(&self, w: &Q) -> Result<MultiGraph> {
        MultiGraph::new(
            self.n,
            self.edges
                .iter()
                .map(|e| Edge {
                    u: e.u,
                    v: e.v,
                    weight: w.clone(),
                })
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    pub fn has_positive_weights(&self) -> bool {
        self.edges.iter().all(|e| e.weight.is_positive())
    }

    pub fn is_unit_weighted(&self) -> bool {
        self.edges.iter().all(|e| e.weight.is_one())
    }

    /// Degree with self-loops counted twice and parallel edges separately.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.u == v) + usize::from(e.v == v))
            .sum()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for e in &self.edges {
            d[e.u] += 1;
            d[e.v] += 1;
        }
        d
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().into_iter().max().unwrap_or(0)
    }

    /// Largest number of distinct neighbours (parallel edges and loops
    /// collapsed, a loop not counting as a neighbour).
    pub fn max_distinct_neighbors(&self) -> usize {
        let adj = self.neighbor_sets();
        adj.iter().map(|s| s.len()).max().unwrap_or(0)
    }

    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degrees();
        d.iter().all(|&x| x == d[0]).then_some(d[0])
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let (a, b) = if u <= v { (u, v) } else { (v, u) };
        self.edges.iter().any(|e| e.u == a && e.v == b)
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(Edge::is_loop)
    }

    /// Edge indices incident to each vertex (a loop appears once).
    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, e) in self.edges.iter().enumerate() {
            inc[e.u].push(i);
            if !e.is_loop() {
                inc[e.v].push(i);
            }
        }
        inc
    }

    pub fn neighbor_sets(&self) -> Vec<std::collections::BTreeSet<usize>> {
        let mut adj = vec![std::collections::BTreeSet::new(); self.n];
        for e in &self.edges {
            if !e.is_loop() {
                adj[e.u].insert(e.v);
                adj[e.v].insert(e.u);
            }
        }
        adj
    }
}

fn compute_connected(n: usize, edges: &[Edge]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let nx = p[y];
            p[y] = r;
            y = nx;
        }
        r
    }
    let mut comps = n;
    for e in edges {
        let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
        if a != b {
            parent[a] = b;
            comps -= 1;
        }
    }
    comps == 1
}

pub fn connected(g: &MultiGraph) -> bool {
    g.is_connected()
}

/// Attaches `k` fresh leaves to every vertex with unit-weight edges. The
/// leaves of host `v` are numbered `n + v*k .. n + (v+1)*k`.
pub fn star_augment(g: &MultiGraph, k: usize) -> MultiGraph {
    let n = g.n();
    let mut edges = g.edges().to_vec();
    for v in 0..n {
        for j in 0..k {
            edges.push(Edge {
                u: v,
                v: n + v * k + j,
                weight: Q::one(),
            });
        }
    }
    MultiGraph::new(n * (1 + k), edges).expect("augmentation of a valid graph")
}

/// Which edges of an attached pendant path are doubled.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum PathDoubling {
    /// Plain paths.
    None,
    /// Every edge inside the pendant path is a parallel pair; the edge from
    /// the host to the path stays single.
    PathOnly,
    /// The host-to-path edge is doubled as well.
    PathAndConnector,
}

/// Attaches a pendant path of `k` fresh vertices to every vertex; with
/// `doubled`, every path edge and the connecting edge become parallel pairs.
pub fn path_augment(g: &MultiGraph, k: usize, doubled: bool) -> MultiGraph {
    let mode = if doubled {
        PathDoubling::PathAndConnector
    } else {
        PathDoubling::None
    };
    path_augment_with(g, k, mode)
}

/// Pendant-path augmentation with explicit doubling convention. The path of
/// host `v` occupies `n + v*k .. n + (v+1)*k`, its first vertex adjacent to
/// `v`.
pub fn path_augment_with(g: &MultiGraph, k: usize, mode: PathDoubling) -> MultiGraph {
    let n = g.n();
    let mut edges = g.edges().to_vec();
    let unit = |u, v| Edge { u, v, weight: Q::one() };
    for v in 0..n {
        if k == 0 {
            continue;
        }
        let base = n + v * k;
        edges.push(unit(v, base));
        if mode == PathDoubling::PathAndConnector {
            edges.push(unit(v, base));
        }
        for j in 1..k {
            edges.push(unit(base + j - 1, base + j));
            if mode != PathDoubling::None {
                edges.push(unit(base + j - 1, base + j));
            }
        }
    }
    MultiGraph::new(n * (1 + k), edges).expect("augmentation of a valid graph")
}

pub fn add_pendant_vertex(g: &MultiGraph, attach_at: usize) -> Result<MultiGraph> {
    if attach_at >= g.n() {
        return Err(Error::InvalidInput(format!("vertex {attach_at} out of range")));
    }
    let mut edges = g.edges().to_vec();
    edges.push(Edge {
        u: attach_at,
        v: g.n(),
        weight: Q::one(),
    });
    MultiGraph::new(g.n() + 1, edges)
}

/// Merges `v` into `u`. Vertex `v` disappears and the ids above it shift
/// down by one; edges at `v` are redirected to `u`.
pub fn merge_vertices(g: &MultiGraph, u: usize, v: usize) -> Result<MultiGraph> {
    if u >= g.n() || v >= g.n() {
        return Err(Error::InvalidInput("merge: vertex out of range".into()));
    }
    if u == v {
        return Err(Error::Precondition("merge: vertices must be distinct".into()));
    }
    if g.has_edge(u, v) {
        return Err(Error::Precondition(format!("merge: vertices {u} and {v} are adjacent")));
    }
    let relabel = |x: usize| {
        let x = if x == v { u } else { x };
        if x > v {
            x - 1
        } else {
            x
        }
    };
    let edges = g
        .edges()
        .iter()
        .map(|e| Edge {
            u: relabel(e.u),
            v: relabel(e.v),
            weight: e.weight.clone(),
        })
        .collect();
    MultiGraph::new(g.n() - 1, edges)
}

/// Undirected bipartite double: vertex `x` on the out-side is `x`, on the
/// in-side it is `n + x`; arc `(x, y, w)` becomes edge `{x, n + y}` of weight
/// `w`. Perfect matchings of the double correspond to cycle covers of `d`.
pub fn bipartite_double(d: &DirectedWeightedGraph) -> MultiGraph {
    let n = d.n();
    let edges = d
        .arcs()
        .map(|(x, y, w)| Edge {
            u: x,
            v: n + y,
            weight: Q::from_integer(w.into()),
        })
        .collect();
    MultiGraph::new(2 * n, edges).expect("double of a valid digraph")
}
