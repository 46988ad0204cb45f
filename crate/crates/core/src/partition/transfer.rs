//! Exact partition functions of large sparse graphs by a frontier (transfer)
//! dynamic program.
//!
//! Vertices are added one at a time; the state records what the not yet
//! finished vertices (the frontier) still need to know: their spins for the
//! two-state models, whether they are already matched for the monomer-dimer
//! model. The cost is exponential in the frontier width only, so pendant
//! stars and paths are cheap.
//!
//! Values live in a [`Semiring`]: either full polynomials in the activity or
//! a jet `(Z, DZ, D^2 Z)` at a fixed rational activity, `D = lambda d/dlambda`.

use std::collections::HashMap;

use num::{One, Zero};

use crate::graphs::MultiGraph;
use crate::poly::UniPoly;
use crate::rational::{pow, Q};

pub trait Semiring {
    type V: Clone;
    fn zero(&self) -> Self::V;
    fn one(&self) -> Self::V;
    fn add_assign(&self, a: &mut Self::V, b: &Self::V);
    fn scale(&self, a: &Self::V, c: &Q) -> Self::V;
    /// Multiplies by `lambda^s`.
    fn activity(&self, a: &Self::V, s: usize) -> Self::V;
}

/// Polynomials in the activity.
pub struct PolyRing;

impl Semiring for PolyRing {
    type V = UniPoly;
    fn zero(&self) -> UniPoly {
        UniPoly::zero()
    }
    fn one(&self) -> UniPoly {
        UniPoly::one()
    }
    fn add_assign(&self, a: &mut UniPoly, b: &UniPoly) {
        *a = &*a + b;
    }
    fn scale(&self, a: &UniPoly, c: &Q) -> UniPoly {
        a.scale(c)
    }
    fn activity(&self, a: &UniPoly, s: usize) -> UniPoly {
        a.shift(s)
    }
}

/// `(f, Df, D^2 f)` evaluated at a fixed activity.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet(pub [Q; 3]);

impl Jet {
    pub fn value(&self) -> &Q {
        &self.0[0]
    }
    pub fn d1(&self) -> &Q {
        &self.0[1]
    }
    pub fn d2(&self) -> &Q {
        &self.0[2]
    }
}

pub struct JetRing {
    lambda_pows: Vec<Q>,
    lambda: Q,
}

impl JetRing {
    pub fn new(lambda: &Q) -> Self {
        JetRing {
            lambda_pows: vec![Q::one(), lambda.clone()],
            lambda: lambda.clone(),
        }
    }

    fn lpow(&self, s: usize) -> Q {
        self.lambda_pows.get(s).cloned().unwrap_or_else(|| pow(&self.lambda, s))
    }
}

impl Semiring for JetRing {
    type V = Jet;
    fn zero(&self) -> Jet {
        Jet([Q::zero(), Q::zero(), Q::zero()])
    }
    fn one(&self) -> Jet {
        Jet([Q::one(), Q::zero(), Q::zero()])
    }
    fn add_assign(&self, a: &mut Jet, b: &Jet) {
        for i in 0..3 {
            a.0[i] += &b.0[i];
        }
    }
    fn scale(&self, a: &Jet, c: &Q) -> Jet {
        Jet([&a.0[0] * c, &a.0[1] * c, &a.0[2] * c])
    }
    fn activity(&self, a: &Jet, s: usize) -> Jet {
        if s == 0 {
            return a.clone();
        }
        // D(l^s f) = l^s (s f + Df), D^2(l^s f) = l^s (s^2 f + 2s Df + D^2 f).
        let l = self.lpow(s);
        let sq = Q::from_integer(s.into());
        let f = &a.0[0];
        let df = &a.0[1];
        let d2f = &a.0[2];
        let two_s = &sq + &sq;
        Jet([f * &l, (&sq * f + df) * &l, (&sq * &sq * f + &two_s * df + d2f) * &l])
    }
}

struct Step {
    v: usize,
    /// Frontier slots of already processed neighbours, one entry per edge,
    /// with the edge index.
    back: Vec<(usize, usize)>,
    loops: usize,
    /// Slots (after pushing `v`) that retire after this step, ascending.
    retire: Vec<usize>,
    width: usize,
}

/// Vertex elimination order chosen greedily to keep the frontier small
/// (ties broken by lowest vertex id).
pub struct Plan {
    steps: Vec<Step>,
    max_width: usize,
}

impl Plan {
    pub fn new(g: &MultiGraph) -> Self {
        let n = g.n();
        let adj = g.neighbor_sets();
        let inc = g.incidence();
        let mut done = vec![false; n];
        let mut remaining: Vec<usize> = adj.iter().map(|s| s.len()).collect();
        let mut frontier: Vec<usize> = Vec::new();
        let mut in_frontier = vec![false; n];
        let mut steps = Vec::with_capacity(n);
        let mut max_width = 0;
        for _ in 0..n {
            // Growth of the frontier if `v` is processed next.
            let score = |v: usize| -> (isize, usize) {
                let mut delta: isize = if remaining[v] == 0 { 0 } else { 1 };
                for &u in &adj[v] {
                    if in_frontier[u] && remaining[u] == 1 {
                        delta -= 1;
                    }
                }
                (delta, v)
            };
            let mut cands: Vec<usize> = frontier
                .iter()
                .flat_map(|&u| adj[u].iter().copied())
                .filter(|&v| !done[v])
                .collect();
            if cands.is_empty() {
                cands = (0..n).filter(|&v| !done[v]).collect();
            }
            let v = cands.into_iter().min_by_key(|&v| score(v)).unwrap();
            let back: Vec<(usize, usize)> = inc[v]
                .iter()
                .filter_map(|&ei| {
                    let e = &g.edges()[ei];
                    if e.is_loop() {
                        return None;
                    }
                    let u = e.other(v);
                    done[u].then(|| (frontier.iter().position(|&x| x == u).unwrap(), ei))
                })
                .collect();
            let loops = inc[v].iter().filter(|&&ei| g.edges()[ei].is_loop()).count();
            done[v] = true;
            for &u in &adj[v] {
                remaining[u] -= 1;
            }
            frontier.push(v);
            in_frontier[v] = true;
            max_width = max_width.max(frontier.len());
            let retire: Vec<usize> = (0..frontier.len()).filter(|&i| remaining[frontier[i]] == 0).collect();
            for &i in retire.iter().rev() {
                in_frontier[frontier[i]] = false;
                frontier.remove(i);
            }
            steps.push(Step {
                v,
                back,
                loops,
                retire,
                width: frontier.len(),
            });
        }
        assert!(max_width <= 63, "frontier too wide for the transfer method");
        Plan { steps, max_width }
    }

    pub fn max_width(&self) -> usize {
        self.max_width
    }

    pub fn order(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.v).collect()
    }
}

/// Drops the bits at `retire` (ascending) and closes the gaps.
fn compress(mask: u64, retire: &[usize]) -> u64 {
    let mut out = 0u64;
    let mut j = 0;
    let mut r = retire.iter().peekable();
    for i in 0..64 {
        if r.peek() == Some(&&i) {
            r.next();
            continue;
        }
        out |= (mask >> i & 1) << j;
        j += 1;
    }
    out
}

/// Generic two-state model: vertex weight `lambda` for `+`, edge weight
/// `w_pp`, `w_mm` or `w_pm` by the spins of its endpoints; edge weights of
/// the graph are ignored.
pub fn two_state<R: Semiring>(g: &MultiGraph, ring: &R, w_pp: &Q, w_mm: &Q, w_pm: &Q) -> R::V {
    two_state_with_plan(g, &Plan::new(g), ring, w_pp, w_mm, w_pm)
}

pub fn two_state_with_plan<R: Semiring>(g: &MultiGraph, plan: &Plan, ring: &R, w_pp: &Q, w_mm: &Q, w_pm: &Q) -> R::V {
    let maxdeg = g.max_degree() + 1;
    let pows = |w: &Q| -> Vec<Q> { (0..=maxdeg).map(|k| pow(w, k)).collect() };
    let (pp, mm, pm) = (pows(w_pp), pows(w_mm), pows(w_pm));
    let mut states: HashMap<u64, R::V> = HashMap::new();
    states.insert(0, ring.one());
    for (t, step) in plan.steps.iter().enumerate() {
        let slot = if t == 0 { 0 } else { plan.steps[t - 1].width };
        let mut next: HashMap<u64, R::V> = HashMap::with_capacity(states.len() * 2);
        for (mask, val) in &states {
            let plus_nbrs = step.back.iter().filter(|(s, _)| mask >> s & 1 == 1).count();
            let minus_nbrs = step.back.len() - plus_nbrs;
            for s in 0..2u64 {
                let factor = if s == 1 {
                    &pp[plus_nbrs] * &pm[minus_nbrs] * &pp[step.loops]
                } else {
                    &mm[minus_nbrs] * &pm[plus_nbrs] * &mm[step.loops]
                };
                let mut v = ring.scale(val, &factor);
                if s == 1 {
                    v = ring.activity(&v, 1);
                }
                let key = compress(mask | s << slot, &step.retire);
                match next.get_mut(&key) {
                    Some(acc) => ring.add_assign(acc, &v),
                    None => {
                        next.insert(key, v);
                    }
                }
            }
        }
        states = next;
    }
    debug_assert!(states.len() == 1);
    states.into_values().next().unwrap_or_else(|| ring.zero())
}

/// Monomer-dimer model: each unmatched vertex carries `lambda`, each matched
/// edge its weight. Pendant leaves are folded into their hosts first.
pub fn matching<R: Semiring>(g: &MultiGraph, ring: &R) -> R::V {
    let (core, leaves) = fold_pendant_leaves(g);
    matching_core(&core, &Plan::new(&core), &leaves, ring)
}

pub fn matching_with_plan<R: Semiring>(g: &MultiGraph, plan: &Plan, ring: &R) -> R::V {
    let none = vec![(0, Q::zero()); g.n()];
    matching_core(g, plan, &none, ring)
}

/// Pendant leaves of a host `v`: how many, and their total edge weight.
type Leaves = Vec<(usize, Q)>;

/// Removes every degree-one vertex hanging off a vertex that stays (of an
/// isolated edge the higher-numbered end goes). Returns the remaining graph,
/// relabelled in order, and the leaves folded into each remaining vertex.
fn fold_pendant_leaves(g: &MultiGraph) -> (MultiGraph, Leaves) {
    let n = g.n();
    let inc = g.incidence();
    let hang = |v: usize| -> Option<usize> {
        if inc[v].len() != 1 {
            return None;
        }
        let e = &g.edges()[inc[v][0]];
        if e.is_loop() {
            return None;
        }
        let u = e.other(v);
        (inc[u].len() > 1 || u < v).then_some(u)
    };
    let is_leaf: Vec<bool> = (0..n).map(|v| hang(v).is_some()).collect();
    let mut id = vec![usize::MAX; n];
    let mut m = 0;
    for v in 0..n {
        if !is_leaf[v] {
            id[v] = m;
            m += 1;
        }
    }
    let mut leaves = vec![(0usize, Q::zero()); m];
    let mut edges = Vec::with_capacity(g.edge_count());
    for e in g.edges() {
        match (is_leaf[e.u], is_leaf[e.v]) {
            (false, false) => edges.push(crate::graphs::Edge {
                u: id[e.u],
                v: id[e.v],
                weight: e.weight.clone(),
            }),
            (true, false) | (false, true) => {
                let host = if is_leaf[e.u] { e.v } else { e.u };
                let slot = &mut leaves[id[host]];
                slot.0 += 1;
                slot.1 += &e.weight;
            }
            (true, true) => unreachable!("a leaf hangs off a kept vertex"),
        }
    }
    (MultiGraph::new(m, edges).expect("subgraph of a valid graph"), leaves)
}

fn matching_core<R: Semiring>(g: &MultiGraph, plan: &Plan, leaves: &Leaves, ring: &R) -> R::V {
    let mut states: HashMap<u64, R::V> = HashMap::new();
    states.insert(0, ring.one());
    let push = |next: &mut HashMap<u64, R::V>, key: u64, v: R::V| match next.get_mut(&key) {
        Some(acc) => ring.add_assign(acc, &v),
        None => {
            next.insert(key, v);
        }
    };
    for (t, step) in plan.steps.iter().enumerate() {
        let slot = if t == 0 { 0 } else { plan.steps[t - 1].width };
        let (k, c) = &leaves[step.v];
        let mut next: HashMap<u64, R::V> = HashMap::with_capacity(states.len() * 2);
        for (mask, val) in &states {
            let emit = |m: u64, v: R::V, next: &mut HashMap<u64, R::V>| {
                let free = step.retire.iter().filter(|&&r| m >> r & 1 == 0).count();
                let v = ring.activity(&v, free);
                push(next, compress(m, &step.retire), v);
            };
            // No leaf of `v` matched: all `k` are monomers.
            let open = ring.activity(val, *k);
            for &(s, ei) in &step.back {
                if mask >> s & 1 == 0 {
                    let w = &g.edges()[ei].weight;
                    emit(mask | 1 << s | 1 << slot, ring.scale(&open, w), &mut next);
                }
            }
            emit(*mask, open, &mut next);
            if *k > 0 {
                emit(*mask | 1 << slot, ring.activity(&ring.scale(val, c), k - 1), &mut next);
            }
        }
        states = next;
    }
    let mut total = ring.zero();
    for v in states.values() {
        ring.add_assign(&mut total, v);
    }
    total
}

pub fn ising_poly(g: &MultiGraph, beta: &Q) -> UniPoly {
    two_state(g, &PolyRing, &Q::one(), &Q::one(), beta)
}

pub fn ising_jet(g: &MultiGraph, beta: &Q, lambda: &Q) -> Jet {
    two_state(g, &JetRing::new(lambda), &Q::one(), &Q::one(), beta)
}

pub fn twospin_poly(g: &MultiGraph, alpha1: &Q, alpha2: &Q) -> UniPoly {
    two_state(g, &PolyRing, alpha1, alpha2, &Q::one())
}

pub fn twospin_jet(g: &MultiGraph, alpha1: &Q, alpha2: &Q, lambda: &Q) -> Jet {
    two_state(g, &JetRing::new(lambda), alpha1, alpha2, &Q::one())
}

pub fn matching_poly(g: &MultiGraph) -> UniPoly {
    matching(g, &PolyRing)
}

pub fn matching_jet(g: &MultiGraph, lambda: &Q) -> Jet {
    matching(g, &JetRing::new(lambda))
}
