//! Ferromagnetic two-spin systems `Z_S = sum l^p a1^(e+) a2^(e-)`.

use num::{One, Zero};

use super::oracle::{run_queries, AverageOracle, Query};
use super::states::TwoSpinPathState;
use super::{check_connected, check_monotone, check_positive, interpolate_log_derivative, Model, RecoveryReport};
use crate::error::{Error, Result};
use crate::graphs::{path_augment_with, MultiGraph, PathDoubling};
use crate::partition::transfer;
use crate::rational::{pow, sqrt_exact, Q};

/// `(beta, lambda')` with `beta = 1/sqrt(a1 a2)` and
/// `lambda' = lambda (a1/a2)^(delta/2)`, so that on a `delta`-regular graph
/// `Z_S(a1, a2, lambda) = a2^|E| Z_I(beta, lambda')`. Only rational results
/// are representable.
pub fn twospin_translate(a1: &Q, a2: &Q, lambda: &Q, delta: usize) -> Result<(Q, Q)> {
    let prod = a1 * a2;
    let root = sqrt_exact(&prod).ok_or_else(|| Error::Precondition("a1 * a2 is not a rational square".into()))?;
    let ratio = a1 / a2;
    let scale = if delta.is_multiple_of(2) {
        pow(&ratio, delta / 2)
    } else {
        let r = sqrt_exact(&ratio).ok_or_else(|| Error::Precondition("a1 / a2 is not a rational square".into()))?;
        pow(&r, delta)
    };
    Ok((root.recip(), lambda * scale))
}

/// Whether the pendant paths must be doubled: with
/// `(a1 - 1) lambda = a2 - 1` the ratio `r_k = lambda` is a fixed point of the
/// plain path recurrence, so all `lambda_k` would coincide.
pub fn needs_doubling(a1: &Q, a2: &Q, lambda: &Q) -> bool {
    (a1 - Q::one()) * lambda == a2 - Q::one()
}

/// Recovery from two-spin magnetizations on a connected regular graph.
/// `G(k)` attaches a path of `k` vertices to every vertex; with
/// `r_{k+1} = l (a1 r_k + 1)/(a2 + r_k)` and the `m^±` states at the host,
/// `M_S(G(k)) = n m^- + (m^+ - m^-) M_S(G, r_{k+1})`. In the doubled case
/// the path edges are parallel pairs and the host edge stays single.
pub fn recover_twospin(
    g: &MultiGraph,
    a1: &Q,
    a2: &Q,
    lambda: &Q,
    oracle: &dyn AverageOracle,
) -> Result<RecoveryReport> {
    check_connected(g)?;
    check_positive(a1, "alpha1")?;
    check_positive(a2, "alpha2")?;
    check_positive(lambda, "lambda")?;
    if a1 * a2 <= Q::one() {
        return Err(Error::InvalidInput(
            "the two-spin system must be ferromagnetic (a1 a2 > 1)".into(),
        ));
    }
    if a1 == a2 && lambda.is_one() {
        return Err(Error::InvalidInput(
            "a1 = a2 with lambda = 1 is the excluded symmetric case".into(),
        ));
    }
    if g.regular_degree().is_none() {
        return Err(Error::Precondition(
            "the two-spin pipeline needs a regular graph".into(),
        ));
    }
    let n = g.n();
    let doubling = if needs_doubling(a1, a2, lambda) {
        PathDoubling::PathOnly
    } else {
        PathDoubling::None
    };
    let (b1, b2) = match doubling {
        PathDoubling::None => (a1.clone(), a2.clone()),
        _ => (a1 * a1, a2 * a2),
    };
    let k_max = 2 * n + 2;
    let mut path = TwoSpinPathState::first(lambda);
    let mut hosts = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        if k > 1 {
            path = path.extend(&b1, &b2, lambda);
        }
        hosts.push(path.extend(a1, a2, lambda));
    }
    let batch: Vec<_> = (1..=k_max)
        .map(|k| {
            let q = Query::TwoSpinMagnetization {
                alpha1: a1.clone(),
                alpha2: a2.clone(),
                lambda: lambda.clone(),
            };
            (k, path_augment_with(g, k, doubling), q)
        })
        .collect();
    let (answers, transcript) = run_queries(oracle, batch)?;
    let mut points = Vec::with_capacity(k_max);
    let mut lambda_ks = Vec::with_capacity(k_max);
    for (h, m_h) in hosts.iter().zip(answers) {
        let gap = &h.m_plus - &h.m_minus;
        if gap <= Q::zero() {
            return Err(Error::Inconsistent("m^+ - m^- must be positive".into()));
        }
        points.push((h.r.clone(), (m_h - Q::from_integer(n.into()) * &h.m_minus) / gap));
        lambda_ks.push(h.r.clone());
    }
    check_monotone(&lambda_ks)?;
    let z = interpolate_log_derivative(points, n, 0, &pow(a2, g.edge_count()))?;
    Ok(RecoveryReport {
        model: Model::Twospin,
        value_at_one: z.eval(&Q::one()),
        polynomial: z,
        lambda_ks,
        transcript,
        perfect_matchings: None,
        path_doubling: Some(doubling),
        verified: None,
    })
}

/// Both sides of the `lambda = 2^d` identity on a `d`-regular graph:
/// `Z_S(G, a, a, 2^d)` and `2^|E| Z_S(G, 2a, a/2, 1)`.
pub fn planar_identity_sides(g: &MultiGraph, alpha: &Q) -> Result<(Q, Q)> {
    let d = g
        .regular_degree()
        .ok_or_else(|| Error::Precondition("the identity needs a regular graph".into()))?;
    let two = Q::from_integer(2.into());
    let lhs = transfer::twospin_poly(g, alpha, alpha).eval(&pow(&two, d));
    let rhs = pow(&two, g.edge_count()) * transfer::twospin_poly(g, &(alpha * &two), &(alpha / &two)).eval(&Q::one());
    Ok((lhs, rhs))
}

pub fn planar_identity_holds(g: &MultiGraph, alpha: &Q) -> Result<bool> {
    let (l, r) = planar_identity_sides(g, alpha)?;
    Ok(l == r && !l.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};
    use crate::reductions::ExactOracle;

    #[test]
    fn translation_identity() {
        let k4 = MultiGraph::complete(4).unwrap();
        let (a1, a2, l) = (qi(4), qi(1), q(1, 3));
        let (b, lp) = twospin_translate(&a1, &a2, &l, 3).unwrap();
        assert_eq!(b, q(1, 2));
        assert_eq!(lp, q(8, 3));
        let zs = transfer::twospin_poly(&k4, &a1, &a2).eval(&l);
        let zi = transfer::ising_poly(&k4, &b).eval(&lp);
        assert_eq!(zs, pow(&a2, 6) * zi);
        assert!(twospin_translate(&qi(2), &qi(1), &qi(1), 2).is_err());
    }

    #[test]
    fn equal_potentials_are_ising() {
        let e = MultiGraph::path(2).unwrap();
        let a = qi(2);
        let zs = transfer::twospin_poly(&e, &a, &a);
        let zi = transfer::ising_poly(&e, &q(1, 2));
        assert_eq!(zs, zi.scale(&a));
    }

    #[test]
    fn case_split() {
        assert!(!needs_doubling(&qi(2), &qi(1), &qi(1)));
        assert!(needs_doubling(&qi(2), &qi(3), &qi(2)));
    }

    #[test]
    fn k4_round_trip() {
        let k4 = MultiGraph::complete(4).unwrap();
        let r = recover_twospin(&k4, &qi(3), &q(1, 2), &qi(1), &ExactOracle).unwrap();
        assert_eq!(r.polynomial, transfer::twospin_poly(&k4, &qi(3), &q(1, 2)));
        assert_eq!(r.path_doubling, Some(PathDoubling::None));
        let c4 = MultiGraph::cycle(4).unwrap();
        let r = recover_twospin(&c4, &qi(2), &qi(3), &qi(2), &ExactOracle).unwrap();
        assert_eq!(r.path_doubling, Some(PathDoubling::PathOnly));
        assert_eq!(r.polynomial, transfer::twospin_poly(&c4, &qi(2), &qi(3)));
        assert!(recover_twospin(&c4, &qi(2), &qi(2), &qi(1), &ExactOracle).is_err());
    }

    #[test]
    fn planar_identity() {
        for g in [MultiGraph::cycle(5).unwrap(), MultiGraph::complete(4).unwrap()] {
            for a in [qi(2), q(3, 2), qi(5)] {
                assert!(planar_identity_holds(&g, &a).unwrap());
            }
        }
    }
}
