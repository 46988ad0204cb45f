//! Alternating Hamiltonian paths: a Hamiltonian path of the bipartite double
//! written over the original digraph. Every vertex `x` appears twice, once as
//! its out-copy `x⁰` (row side) and once as its in-copy `x¹` (column side);
//! consecutive steps `x⁰, y¹` or `y¹, x⁰` must be joined by the arc `x→y`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::compile::{ReductionOutput, Slot};
use super::gadgets::{CLAUSE_A, CLAUSE_B, CLAUSE_C, CLAUSE_ZERO, XOR_A, XOR_B, XOR_C, XOR_D};
use crate::error::{Error, Result};
use crate::graphs::DirectedWeightedGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// Row side: the arc leaving this step starts here.
    Out,
    /// Column side.
    In,
}

/// How a step is reached from its predecessor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Along the arc: `x⁰ → y¹` for `x→y`.
    Forward,
    /// Against it: `y¹ → x⁰`.
    Backward,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlternatingPath {
    pub steps: Vec<(usize, Side)>,
}

impl AlternatingPath {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Direction of each step after the first.
    pub fn directions(&self) -> Vec<Direction> {
        self.steps
            .windows(2)
            .map(|w| {
                if w[0].1 == Side::Out {
                    Direction::Forward
                } else {
                    Direction::Backward
                }
            })
            .collect()
    }

    /// Vertices of the bipartite double (`x` for `x⁰`, `n + x` for `x¹`).
    pub fn to_double(&self, n: usize) -> Vec<usize> {
        self.steps
            .iter()
            .map(|&(v, c)| if c == Side::Out { v } else { n + v })
            .collect()
    }
}

/// True iff `path` is a Hamiltonian path of the bipartite double of `g`.
pub fn validate_certificate(g: &DirectedWeightedGraph, path: &AlternatingPath) -> bool {
    let n = g.n();
    if path.len() != 2 * n {
        return false;
    }
    let mut seen = vec![false; 2 * n];
    for v in path.to_double(n) {
        if v >= 2 * n || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    path.steps.windows(2).all(|w| match (w[0], w[1]) {
        ((x, Side::Out), (y, Side::In)) | ((y, Side::In), (x, Side::Out)) => g.weight(x, y).is_some(),
        _ => false,
    })
}

use Side::{In as I, Out as O};

struct PathBuilder<'a> {
    out: &'a ReductionOutput,
    covered_var: Vec<bool>,
    /// XOR gadgets whose `a⁰, d¹` were used by a variable traversal.
    partial: Vec<bool>,
    steps: Vec<(usize, Side)>,
}

impl PathBuilder<'_> {
    fn xor(&self, p: usize) -> [usize; 4] {
        self.out.layout.xors[p]
    }

    /// `a¹ b⁰ b¹ a⁰ (detour | ) d¹ c⁰ c¹ d⁰`.
    fn xor_full(&mut self, p: usize, detour: impl FnOnce(&mut Self) -> Result<()>) -> Result<()> {
        let x = self.xor(p);
        if self.partial[p] {
            return Err(Error::CertificateFailure(format!("XOR gadget {p} entered twice")));
        }
        self.steps
            .extend([(x[XOR_A], I), (x[XOR_B], O), (x[XOR_B], I), (x[XOR_A], O)]);
        detour(self)?;
        self.steps
            .extend([(x[XOR_D], I), (x[XOR_C], O), (x[XOR_C], I), (x[XOR_D], O)]);
        Ok(())
    }

    /// `a¹ b⁰ b¹ c⁰ c¹ d⁰`, finishing a gadget whose `a⁰, d¹` are used.
    fn xor_second(&mut self, p: usize) -> Result<()> {
        if !self.partial[p] {
            return Err(Error::CertificateFailure(format!(
                "XOR gadget {p} has no partial traversal"
            )));
        }
        let x = self.xor(p);
        self.steps.extend([
            (x[XOR_A], I),
            (x[XOR_B], O),
            (x[XOR_B], I),
            (x[XOR_C], O),
            (x[XOR_C], I),
            (x[XOR_D], O),
        ]);
        Ok(())
    }

    /// Entered at `u_i¹` from the `a` port of occurrence `i`'s XOR; walks the
    /// chain cyclically `u_i .. u_t, u_0 .. u_{i-1}`, crossing each other
    /// dotted edge through its XOR as `d¹ a⁰`, and stops at `u_{i-1}⁰`.
    fn variable_traversal(&mut self, var: usize, i: usize) {
        let u = self.out.layout.vars[var - 1].clone();
        let t = u.len() - 1;
        self.covered_var[var - 1] = true;
        let mut k = i;
        loop {
            self.steps.extend([(u[k], I), (u[k], O)]);
            let next = if k == t { 0 } else { k + 1 };
            if next == i {
                break;
            }
            if k < t {
                let p = self.out.layout.var_occ[var - 1][k];
                let x = self.xor(p);
                self.steps.extend([(x[XOR_D], I), (x[XOR_A], O)]);
                self.partial[p] = true;
            }
            k = next;
        }
    }

    /// The XOR replacing a literal slot, traversed from `a¹` to `d⁰`.
    fn literal_piece(&mut self, p: usize) -> Result<()> {
        let pr = &self.out.pairings[p];
        let var = pr.variable;
        let k = pr.occurrence;
        if self.covered_var[var - 1] {
            self.xor_second(p)
        } else {
            self.xor_full(p, |b| {
                b.variable_traversal(var, k);
                Ok(())
            })
        }
    }

    /// `c¹ 0⁰ a¹ [c→a] c⁰ b¹ [a→b] a⁰ 0¹ b⁰`, each dotted edge replaced by
    /// the reversed traversal of its XOR gadget.
    fn clause(&mut self, j: usize) -> Result<()> {
        let cl = self.out.layout.clauses[j];
        let [_, first, second] = self.out.layout.clause_xor[j];
        self.steps
            .extend([(cl[CLAUSE_C], I), (cl[CLAUSE_ZERO], O), (cl[CLAUSE_A], I)]);
        self.reversed_piece(first)?;
        self.steps.extend([(cl[CLAUSE_C], O), (cl[CLAUSE_B], I)]);
        self.reversed_piece(second)?;
        self.steps
            .extend([(cl[CLAUSE_A], O), (cl[CLAUSE_ZERO], I), (cl[CLAUSE_B], O)]);
        Ok(())
    }

    fn reversed_piece(&mut self, p: usize) -> Result<()> {
        let start = self.steps.len();
        self.literal_piece(p)?;
        self.steps[start..].reverse();
        Ok(())
    }
}

/// Alternating Hamiltonian path of the compiled graph: start at `T_0⁰`, and
/// for each clause take the shared-variable XOR with a detour through the
/// clause gadget; at each literal XOR either cover the literal's variable
/// gadget (first visit) or finish the partially traversed XOR. Chain vertices
/// are threaded through `x⁰ w_1¹ w_1⁰ .. w_κ⁰ y¹`.
pub fn build_hamiltonian_certificate(out: &ReductionOutput) -> Result<AlternatingPath> {
    let lay = &out.layout;
    let mut b = PathBuilder {
        out,
        covered_var: vec![false; lay.vars.len()],
        partial: vec![false; lay.xors.len()],
        steps: Vec::with_capacity(2 * out.gadget_graph.n()),
    };
    let tau = &lay.tau;
    if out.mu == 0 {
        b.steps.extend([(tau[0], O), (tau[1], I), (tau[1], O), (tau[0], I)]);
    } else {
        b.steps.push((tau[0], O));
        for j in 0..out.mu {
            let p = lay.clause_xor[j][Slot::Tau as usize];
            b.xor_full(p, |b| b.clause(j))?;
            b.steps.extend([(tau[j + 1], I), (tau[j + 1], O)]);
        }
        b.steps.push((tau[0], I));
    }
    let core = AlternatingPath { steps: b.steps };
    let path = thread_chains(out, &core);
    if !validate_certificate(&out.gadget_graph, &path) {
        return Err(Error::CertificateFailure(format!(
            "constructed path of length {} does not validate ({} vertices)",
            path.len(),
            out.gadget_graph.n()
        )));
    }
    Ok(path)
}

fn thread_chains(out: &ReductionOutput, core: &AlternatingPath) -> AlternatingPath {
    if out.chains.is_empty() {
        return core.clone();
    }
    let by_arc: HashMap<(usize, usize), &Vec<usize>> = out.chains.iter().map(|c| (c.replaced, &c.vertices)).collect();
    let mut steps: Vec<(usize, Side)> = Vec::with_capacity(2 * out.gadget_graph.n());
    steps.push(core.steps[0]);
    for w in core.steps.windows(2) {
        let (arc, forward) = match (w[0], w[1]) {
            ((x, O), (y, I)) => ((x, y), true),
            ((y, I), (x, O)) => ((x, y), false),
            _ => ((usize::MAX, usize::MAX), true),
        };
        if let Some(chain) = by_arc.get(&arc) {
            let inner: Vec<(usize, Side)> = chain.iter().flat_map(|&v| [(v, I), (v, O)]).collect();
            if forward {
                steps.extend(inner);
            } else {
                steps.extend(inner.into_iter().rev());
            }
        }
        steps.push(w[1]);
    }
    debug_assert!(core.steps.len() <= steps.len() && out.core_vertices <= out.gadget_graph.n());
    AlternatingPath { steps }
}

/// Depth-first search for any Hamiltonian path of the bipartite double,
/// giving up after `budget` node expansions (`None`). `Some(None)` means the
/// search was exhaustive and found nothing.
pub fn exhaustive_search(g: &DirectedWeightedGraph, budget: u64) -> Option<Option<AlternatingPath>> {
    let n = g.n();
    let m = 2 * n;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); m];
    for (x, y, _) in g.arcs() {
        adj[x].push(n + y);
        adj[n + y].push(x);
    }
    let decode = |v: usize| {
        if v < n {
            (v, Side::Out)
        } else {
            (v - n, Side::In)
        }
    };
    let mut expansions = 0u64;
    let mut on = vec![false; m];
    let mut path = Vec::with_capacity(m);
    fn dfs(
        v: usize,
        adj: &[Vec<usize>],
        on: &mut [bool],
        path: &mut Vec<usize>,
        expansions: &mut u64,
        budget: u64,
    ) -> Option<bool> {
        *expansions += 1;
        if *expansions > budget {
            return None;
        }
        on[v] = true;
        path.push(v);
        if path.len() == on.len() {
            return Some(true);
        }
        // Prune: an unvisited vertex with no unvisited neighbor other than
        // through `v` can only be the final vertex; two such means dead end.
        let mut stranded = 0;
        for u in 0..on.len() {
            if !on[u] && !adj[u].iter().any(|&w| !on[w] || w == v) {
                stranded += 2;
            } else if !on[u] && adj[u].iter().filter(|&&w| !on[w] || w == v).count() == 1 {
                stranded += 1;
            }
        }
        if stranded <= 1 {
            let mut next: Vec<usize> = adj[v].iter().copied().filter(|&u| !on[u]).collect();
            // Fewest onward options first.
            next.sort_by_key(|&u| adj[u].iter().filter(|&&w| !on[w]).count());
            for u in next {
                match dfs(u, adj, on, path, expansions, budget) {
                    Some(true) => return Some(true),
                    None => return None,
                    Some(false) => {}
                }
            }
        }
        on[v] = false;
        path.pop();
        Some(false)
    }
    for s in 0..m {
        match dfs(s, &adj, &mut on, &mut path, &mut expansions, budget) {
            Some(true) => {
                return Some(Some(AlternatingPath {
                    steps: path.iter().map(|&v| decode(v)).collect(),
                }));
            }
            None => return None,
            Some(false) => {}
        }
    }
    Some(None)
}
