//! Weighted partition functions with per-vertex activities:
//! `Z_w = sum_sigma beta^d(sigma) prod_{sigma(v)=+} z_v^w(v)` and its
//! derivative `D_G Z_w = sum_v z_v dZ_w/dz_v`, evaluated (never expanded).

use num::{One, Signed, Zero};
use rug::Float;

use crate::complex::Cx;
use crate::error::{Error, Result};
use crate::graphs::MultiGraph;
use crate::rational::{pow, to_rug, Q};

/// Largest graph for which weighted sums are enumerated.
pub const WEIGHTED_MAX_N: usize = 20;

/// Per-vertex positive integer exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexWeights(pub Vec<usize>);

impl VertexWeights {
    pub fn unit(n: usize) -> Self {
        VertexWeights(vec![1; n])
    }

    /// `w(v) = max(deg(v), 1)`, the smallest legal choice.
    pub fn degrees(g: &MultiGraph) -> Self {
        VertexWeights(g.degrees().into_iter().map(|d| d.max(1)).collect())
    }

    pub fn uniform(n: usize, w: usize) -> Self {
        VertexWeights(vec![w; n])
    }

    /// Legal means `w(v) >= deg(v)` (loops counted twice) and `w(v) >= 1`.
    pub fn is_legal(&self, g: &MultiGraph) -> bool {
        self.0.len() == g.n() && self.0.iter().zip(g.degrees()).all(|(&w, d)| w >= d && w >= 1)
    }

    pub fn check_legal(&self, g: &MultiGraph) -> Result<()> {
        if self.is_legal(g) {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("illegal vertex weights {:?}", self.0)))
        }
    }

    /// Weaker requirement of the plain evaluators: one weight `>= 1` per
    /// vertex. Legality only matters for the zero-free claims.
    pub fn check_positive(&self, g: &MultiGraph) -> Result<()> {
        if self.0.len() == g.n() && self.0.iter().all(|&w| w >= 1) {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "vertex weights must be positive, one per vertex: {:?}",
                self.0
            )))
        }
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

/// Complex activity per vertex at a recorded precision.
#[derive(Clone, Debug)]
pub struct ActivityAssignment {
    pub z: Vec<Cx>,
    pub prec: u32,
}

impl ActivityAssignment {
    pub fn uniform_real(n: usize, x: &Q, prec: u32) -> Self {
        ActivityAssignment {
            z: vec![Cx::from_q(prec, x); n],
            prec,
        }
    }
}

fn check_size(g: &MultiGraph) -> Result<()> {
    if g.n() > WEIGHTED_MAX_N {
        return Err(Error::CapExceeded {
            what: "weighted enumeration vertex count",
            limit: WEIGHTED_MAX_N,
            actual: g.n(),
        });
    }
    Ok(())
}

/// Disagreement-count neighbours of each vertex among lower-numbered
/// vertices, so a depth-first walk can add them up incrementally.
fn lower_neighbors(g: &MultiGraph) -> Vec<Vec<usize>> {
    let mut lower = vec![Vec::new(); g.n()];
    for e in g.edges() {
        if !e.is_loop() {
            lower[e.v.max(e.u)].push(e.u.min(e.v));
        }
    }
    lower
}

/// Generic depth-first enumeration over spins of the vertices not in
/// `fixed_plus`; vertices in `fixed_plus` are `+` and contribute no activity.
/// Calls `leaf(d, plus_set_weight_sum, product_of_activity_terms)`.
fn walk<T: Clone>(
    g: &MultiGraph,
    fixed_plus: &[bool],
    act: &[T],
    w: &[usize],
    one: T,
    mul: &dyn Fn(&T, &T) -> T,
    leaf: &mut dyn FnMut(usize, usize, &T),
) {
    let lower = lower_neighbors(g);
    let n = g.n();
    let mut spin = vec![false; n];
    #[allow(clippy::too_many_arguments)]
    fn rec<T: Clone>(
        v: usize,
        n: usize,
        lower: &[Vec<usize>],
        fixed: &[bool],
        act: &[T],
        w: &[usize],
        spin: &mut Vec<bool>,
        d: usize,
        wsum: usize,
        prod: T,
        mul: &dyn Fn(&T, &T) -> T,
        leaf: &mut dyn FnMut(usize, usize, &T),
    ) {
        if v == n {
            leaf(d, wsum, &prod);
            return;
        }
        let options: &[bool] = if fixed[v] { &[true] } else { &[false, true] };
        for &s in options {
            spin[v] = s;
            let dd = d + lower[v].iter().filter(|&&u| spin[u] != s).count();
            if s && !fixed[v] {
                let p = mul(&prod, &act[v]);
                rec(v + 1, n, lower, fixed, act, w, spin, dd, wsum + w[v], p, mul, leaf);
            } else {
                rec(v + 1, n, lower, fixed, act, w, spin, dd, wsum, prod.clone(), mul, leaf);
            }
        }
    }
    rec(0, n, &lower, fixed_plus, act, w, &mut spin, 0, 0, one, mul, leaf);
}

/// Returns `(Z_w, D Z_w)` at complex activities.
pub fn weighted_ising_eval_pair(
    g: &MultiGraph,
    beta: &Q,
    z: &ActivityAssignment,
    w: &VertexWeights,
) -> Result<(Cx, Cx)> {
    conditioned_pair(g, &vec![false; g.n()], beta, z, w)
}

pub fn weighted_ising_eval(g: &MultiGraph, beta: &Q, z: &ActivityAssignment, w: &VertexWeights) -> Result<Cx> {
    Ok(weighted_ising_eval_pair(g, beta, z, w)?.0)
}

pub fn weighted_ising_d_eval(g: &MultiGraph, beta: &Q, z: &ActivityAssignment, w: &VertexWeights) -> Result<Cx> {
    Ok(weighted_ising_eval_pair(g, beta, z, w)?.1)
}

/// Sum of the moduli of all terms of `D Z_w`, the natural scale against
/// which "numerically zero" is judged.
pub fn weighted_d_magnitude(g: &MultiGraph, beta: &Q, z: &ActivityAssignment, w: &VertexWeights) -> Result<Float> {
    check_size(g)?;
    let prec = z.prec;
    let mods: Vec<Float> =
        z.z.iter()
            .zip(&w.0)
            .map(|(c, &k)| {
                let a = c.abs();
                use rug::ops::Pow;
                Float::with_val(prec, a.pow(k as u32))
            })
            .collect();
    let bpow: Vec<Float> = (0..=g.edge_count())
        .map(|d| Float::with_val(prec, to_rug(&pow(beta, d))))
        .collect();
    let mut total = Float::new(prec);
    let mul = |a: &Float, b: &Float| Float::with_val(prec, a * b);
    walk(
        g,
        &vec![false; g.n()],
        &mods,
        &w.0,
        Float::with_val(prec, 1),
        &mul,
        &mut |d, ws, p| {
            total += Float::with_val(prec, p * &bpow[d]) * ws as u32;
        },
    );
    Ok(total)
}

fn conditioned_pair(
    g: &MultiGraph,
    fixed: &[bool],
    beta: &Q,
    z: &ActivityAssignment,
    w: &VertexWeights,
) -> Result<(Cx, Cx)> {
    check_size(g)?;
    w.check_positive(g)?;
    if z.z.len() != g.n() {
        return Err(Error::InvalidInput("one activity per vertex is required".into()));
    }
    let prec = z.prec;
    let act: Vec<Cx> = z.z.iter().zip(&w.0).map(|(c, &k)| c.powu(k as u32)).collect();
    let bpow: Vec<Float> = (0..=g.edge_count())
        .map(|d| Float::with_val(prec, to_rug(&pow(beta, d))))
        .collect();
    let mut zsum = Cx::zero(prec);
    let mut dsum = Cx::zero(prec);
    let mul = |a: &Cx, b: &Cx| a.mul(b);
    walk(g, fixed, &act, &w.0, Cx::one(prec), &mul, &mut |d, ws, p| {
        let term = p.scale(&bpow[d]);
        dsum = dsum.add(&term.scale(&Float::with_val(prec, ws)));
        zsum = zsum.add(&term);
    });
    Ok((zsum, dsum))
}

/// `(Z_w^+(S), D Z_w^+(S))`: configurations with every vertex of `S` fixed
/// to `+`. The fixed vertices contribute no activity (and no derivative) but
/// their edges still pay `beta` when they disagree. For `S = V` the single
/// remaining configuration gives 1.
pub fn conditioned_partition_plus(
    g: &MultiGraph,
    s: &[usize],
    beta: &Q,
    z: &ActivityAssignment,
    w: &VertexWeights,
) -> Result<(Cx, Cx)> {
    if s.is_empty() {
        return Err(Error::Precondition("the conditioning set must be nonempty".into()));
    }
    let mut fixed = vec![false; g.n()];
    for &v in s {
        if v >= g.n() {
            return Err(Error::InvalidInput(format!("vertex {v} out of range")));
        }
        fixed[v] = true;
    }
    conditioned_pair(g, &fixed, beta, z, w)
}

/// Exact `(Z_w, D Z_w)` for rational activities.
pub fn weighted_ising_eval_exact(g: &MultiGraph, beta: &Q, z: &[Q], w: &VertexWeights) -> Result<(Q, Q)> {
    conditioned_exact(g, &vec![false; g.n()], beta, z, w)
}

pub fn conditioned_partition_plus_exact(
    g: &MultiGraph,
    s: &[usize],
    beta: &Q,
    z: &[Q],
    w: &VertexWeights,
) -> Result<(Q, Q)> {
    if s.is_empty() {
        return Err(Error::Precondition("the conditioning set must be nonempty".into()));
    }
    let mut fixed = vec![false; g.n()];
    for &v in s {
        fixed[v] = true;
    }
    conditioned_exact(g, &fixed, beta, z, w)
}

fn conditioned_exact(g: &MultiGraph, fixed: &[bool], beta: &Q, z: &[Q], w: &VertexWeights) -> Result<(Q, Q)> {
    check_size(g)?;
    w.check_positive(g)?;
    if z.len() != g.n() {
        return Err(Error::InvalidInput("one activity per vertex is required".into()));
    }
    let act: Vec<Q> = z.iter().zip(&w.0).map(|(c, &k)| pow(c, k)).collect();
    let bpow: Vec<Q> = (0..=g.edge_count()).map(|d| pow(beta, d)).collect();
    let (mut zs, mut ds) = (Q::zero(), Q::zero());
    let mul = |a: &Q, b: &Q| a * b;
    walk(g, fixed, &act, &w.0, Q::one(), &mul, &mut |d, ws, p| {
        let term = p * &bpow[d];
        ds += &term * Q::from_integer(ws.into());
        zs += term;
    });
    Ok((zs, ds))
}

/// `Re(D Z_w / Z_w)`, the weighted magnetization, at complex activities.
pub fn weighted_magnetization(
    g: &MultiGraph,
    beta: &Q,
    z: &ActivityAssignment,
    w: &VertexWeights,
) -> Result<Option<Cx>> {
    let (zz, dz) = weighted_ising_eval_pair(g, beta, z, w)?;
    if zz.is_zero() {
        return Ok(None);
    }
    Ok(Some(dz.div(&zz)))
}

pub fn positive_real(x: &Q) -> bool {
    x.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    #[test]
    fn single_edge_examples() {
        let e = MultiGraph::path(2).unwrap();
        let b = q(1, 2);
        let (z, dz) = weighted_ising_eval_exact(&e, &b, &[qi(1), qi(1)], &VertexWeights(vec![2, 1])).unwrap();
        assert_eq!((z, dz), (qi(3), q(9, 2)));
        // D-eval of the unit-weight edge at z1 = z2 = lambda is 2 l^2 + 2 b l.
        let l = q(5, 3);
        let (_, dz) = weighted_ising_eval_exact(&e, &b, &[l.clone(), l.clone()], &VertexWeights::unit(2)).unwrap();
        assert_eq!(dz, qi(2) * &l * &l + qi(2) * &b * &l);
        let (z, dz) = weighted_ising_eval_exact(&e, &b, &[qi(2), qi(2)], &VertexWeights::unit(2)).unwrap();
        assert_eq!((z, dz), (qi(7), qi(10)));
    }

    #[test]
    fn all_activities_zero_leaves_the_all_minus_term() {
        let g = MultiGraph::complete(4).unwrap();
        let (z, dz) = weighted_ising_eval_exact(&g, &q(1, 3), &vec![qi(0); 4], &VertexWeights::degrees(&g)).unwrap();
        assert_eq!((z, dz), (qi(1), qi(0)));
    }

    #[test]
    fn edgeless_product_convention() {
        let g = MultiGraph::empty(2).unwrap();
        let (z, _) = weighted_ising_eval_exact(&g, &q(1, 2), &[qi(2), qi(3)], &VertexWeights(vec![2, 1])).unwrap();
        assert_eq!(z, qi(5) * qi(4));
    }

    #[test]
    fn conditioned_examples() {
        let e = MultiGraph::path(2).unwrap();
        let w = VertexWeights::unit(2);
        let (zp, _) = conditioned_partition_plus_exact(&e, &[0], &q(1, 2), &[qi(3), qi(2)], &w).unwrap();
        assert_eq!(zp, q(5, 2));
        let (zp, dzp) = conditioned_partition_plus_exact(&e, &[0, 1], &q(1, 2), &[qi(3), qi(2)], &w).unwrap();
        assert_eq!((zp, dzp), (qi(1), qi(0)));
        // K3 with S = {0}: remaining edge {1,2}, one beta per disagreeing boundary edge.
        let k3 = MultiGraph::complete(3).unwrap();
        let b = q(1, 3);
        let (z1, z2) = (q(3, 2), qi(2));
        let w3 = VertexWeights::uniform(3, 2);
        let (zp, _) = conditioned_partition_plus_exact(&k3, &[0], &b, &[qi(7), z1.clone(), z2.clone()], &w3).unwrap();
        let a1 = &z1 * &z1;
        let a2 = &z2 * &z2;
        let expect = &a1 * &a2 + &b * &a1 * &b + &b * &a2 * &b + &b * &b;
        assert_eq!(zp, expect);
        assert!(conditioned_partition_plus_exact(&e, &[], &b, &[qi(1), qi(1)], &w).is_err());
    }

    #[test]
    fn complex_matches_exact() {
        let g = MultiGraph::cycle(4).unwrap();
        let w = VertexWeights::uniform(4, 3);
        let zs = [q(3, 2), qi(2), q(-5, 4), qi(1)];
        let a = ActivityAssignment {
            z: zs.iter().map(|x| Cx::from_q(256, x)).collect(),
            prec: 256,
        };
        let (zc, dc) = weighted_ising_eval_pair(&g, &q(2, 3), &a, &w).unwrap();
        let (ze, de) = weighted_ising_eval_exact(&g, &q(2, 3), &zs, &w).unwrap();
        let tol = Float::with_val(256, 1e-60);
        assert!(zc.sub(&Cx::from_q(256, &ze)).abs() < tol);
        assert!(dc.sub(&Cx::from_q(256, &de)).abs() < tol);
    }

    #[test]
    fn nonpositive_weights_rejected() {
        let g = MultiGraph::complete(3).unwrap();
        let a = ActivityAssignment::uniform_real(3, &qi(1), 64);
        assert!(weighted_ising_eval(&g, &q(1, 2), &a, &VertexWeights(vec![1, 0, 2])).is_err());
        assert!(weighted_ising_eval(&g, &q(1, 2), &a, &VertexWeights(vec![2, 2])).is_err());
        assert!(!VertexWeights::unit(3).is_legal(&g));
        assert!(weighted_ising_eval(&g, &q(1, 2), &a, &VertexWeights::unit(3)).is_ok());
    }
}
