//! Definitional partition functions by exhaustive enumeration.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::graphs::MultiGraph;
use crate::poly::UniPoly;
use crate::rational::{pow, Q};

#[derive(Clone, Copy, Debug)]
pub struct EnumCaps {
    /// Spin configurations are enumerated only for graphs this small.
    pub ising_max_n: usize,
    /// Matchings are enumerated only for graphs with at most this many edges.
    pub matching_max_edges: usize,
}

impl Default for EnumCaps {
    fn default() -> Self {
        EnumCaps {
            ising_max_n: 24,
            matching_max_edges: 40,
        }
    }
}

/// Number of spin configurations with a given number of `+` spins `p`,
/// disagreeing edges `d` and all-`+` edges `e+` (loops count toward `e+` or
/// `e-` according to their vertex's spin and never disagree).
#[derive(Clone, Debug)]
pub struct SpinCensus {
    pub n: usize,
    pub m: usize,
    counts: Vec<u64>,
}

impl SpinCensus {
    fn idx(&self, p: usize, d: usize, ep: usize) -> usize {
        (p * (self.m + 1) + d) * (self.m + 1) + ep
    }

    pub fn count(&self, p: usize, d: usize, ep: usize) -> u64 {
        self.counts[self.idx(p, d, ep)]
    }

    /// Iterates `(p, d, e+, e-, count)` over nonzero cells.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, usize, usize, u64)> + '_ {
        let m = self.m;
        (0..=self.n).flat_map(move |p| {
            (0..=m).flat_map(move |d| {
                (0..=m - d).filter_map(move |ep| {
                    let c = self.count(p, d, ep);
                    (c != 0).then_some((p, d, ep, m - d - ep, c))
                })
            })
        })
    }
}

/// Walks all `2^n` configurations in Gray-code order, updating the
/// disagreement and all-plus counts incrementally.
pub fn spin_census(g: &MultiGraph, caps: &EnumCaps) -> Result<SpinCensus> {
    let n = g.n();
    if n > caps.ising_max_n {
        return Err(Error::CapExceeded {
            what: "spin enumeration vertex count",
            limit: caps.ising_max_n,
            actual: n,
        });
    }
    let m = g.edge_count();
    let mut nbrs = vec![Vec::new(); n];
    let mut loops = vec![0usize; n];
    for e in g.edges() {
        if e.is_loop() {
            loops[e.u] += 1;
        } else {
            nbrs[e.u].push(e.v);
            nbrs[e.v].push(e.u);
        }
    }
    let mut census = SpinCensus {
        n,
        m,
        counts: vec![0; (n + 1) * (m + 1) * (m + 1)],
    };
    let mut spin = vec![false; n];
    let (mut p, mut d, mut ep) = (0usize, 0usize, 0usize);
    let i0 = census.idx(0, 0, 0);
    census.counts[i0] += 1;
    for step in 1u64..(1u64 << n) {
        let v = step.trailing_zeros() as usize;
        let now_plus = !spin[v];
        spin[v] = now_plus;
        for &u in &nbrs[v] {
            if spin[u] == now_plus {
                d -= 1;
            } else {
                d += 1;
            }
            if spin[u] {
                if now_plus {
                    ep += 1;
                } else {
                    ep -= 1;
                }
            }
        }
        if now_plus {
            p += 1;
            ep += loops[v];
        } else {
            p -= 1;
            ep -= loops[v];
        }
        let i = census.idx(p, d, ep);
        census.counts[i] += 1;
    }
    Ok(census)
}

/// Ising partition function `sum_sigma beta^d(sigma) lambda^p(sigma)` as a
/// polynomial in `lambda`, by enumeration.
pub fn ising_poly(g: &MultiGraph, beta: &Q) -> Result<UniPoly> {
    ising_poly_with(g, beta, &EnumCaps::default())
}

pub fn ising_poly_with(g: &MultiGraph, beta: &Q, caps: &EnumCaps) -> Result<UniPoly> {
    let c = spin_census(g, caps)?;
    let bpow: Vec<Q> = (0..=c.m).map(|d| pow(beta, d)).collect();
    let mut coeffs = vec![Q::zero(); c.n + 1];
    for (p, d, _, _, cnt) in c.cells() {
        coeffs[p] += &bpow[d] * Q::from_integer(cnt.into());
    }
    Ok(UniPoly::new(coeffs))
}

/// `sum_sigma d(sigma) beta^d(sigma) lambda^p(sigma)` as a polynomial in
/// `lambda` (the numerator of the mean number of disagreeing edges).
pub fn ising_energy_poly(g: &MultiGraph, beta: &Q, caps: &EnumCaps) -> Result<UniPoly> {
    let c = spin_census(g, caps)?;
    let mut coeffs = vec![Q::zero(); c.n + 1];
    for (p, d, _, _, cnt) in c.cells() {
        coeffs[p] += pow(beta, d) * Q::from_integer((cnt * d as u64).into());
    }
    Ok(UniPoly::new(coeffs))
}

/// Two-spin partition function `sum lambda^p alpha1^e+ alpha2^e-` as a
/// polynomial in `lambda`, by enumeration.
pub fn twospin_poly(g: &MultiGraph, alpha1: &Q, alpha2: &Q, caps: &EnumCaps) -> Result<UniPoly> {
    let c = spin_census(g, caps)?;
    let a1: Vec<Q> = (0..=c.m).map(|k| pow(alpha1, k)).collect();
    let a2: Vec<Q> = (0..=c.m).map(|k| pow(alpha2, k)).collect();
    let mut coeffs = vec![Q::zero(); c.n + 1];
    for (p, _, ep, em, cnt) in c.cells() {
        coeffs[p] += &a1[ep] * &a2[em] * Q::from_integer(cnt.into());
    }
    Ok(UniPoly::new(coeffs))
}

/// Monomer-dimer partition function `sum_M prod_{e in M} gamma_e *
/// lambda^(unmatched)` by enumeration of all matchings. Self-loops never
/// belong to a matching.
pub fn matching_poly(g: &MultiGraph) -> Result<UniPoly> {
    matching_poly_with(g, &EnumCaps::default())
}

pub fn matching_poly_with(g: &MultiGraph, caps: &EnumCaps) -> Result<UniPoly> {
    let m = g.edge_count();
    if m > caps.matching_max_edges {
        return Err(Error::CapExceeded {
            what: "matching enumeration edge count",
            limit: caps.matching_max_edges,
            actual: m,
        });
    }
    let n = g.n();
    let edges: Vec<_> = g.edges().iter().filter(|e| !e.is_loop()).collect();
    // by_size[j] = total weight of matchings with j edges.
    let mut by_size = vec![Q::zero(); n / 2 + 1];
    fn rec(edges: &[&crate::graphs::Edge], from: usize, used: &mut Vec<bool>, size: usize, w: &Q, acc: &mut [Q]) {
        acc[size] += w;
        for i in from..edges.len() {
            let e = edges[i];
            if used[e.u] || used[e.v] {
                continue;
            }
            used[e.u] = true;
            used[e.v] = true;
            rec(edges, i + 1, used, size + 1, &(w * &e.weight), acc);
            used[e.u] = false;
            used[e.v] = false;
        }
    }
    rec(&edges, 0, &mut vec![false; n], 0, &Q::one(), &mut by_size);
    let mut coeffs = vec![Q::zero(); n + 1];
    for (j, w) in by_size.into_iter().enumerate() {
        coeffs[n - 2 * j] = w;
    }
    Ok(UniPoly::new(coeffs))
}
