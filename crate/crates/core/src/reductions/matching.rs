//! Monomer-dimer pipelines with pendant stars and pendant paths.
//!
//! `U = D Z_M / Z_M` is interpolated as a rational function of degree `n`.
//! For odd `n` there is no perfect matching, so `lambda` divides both `Z_M`
//! and `D Z_M`; then `U = (Z~ + D Z~)/Z~` with `Z~ = Z_M / lambda` of degree
//! `n - 1` is interpolated instead. Any other common factor makes the
//! system rank-deficient and the pipeline fails.

use num::{One, Zero};

use super::oracle::{run_queries, AverageOracle, OracleCall, Query};
use super::states::matching_path_states;
use super::{check_monotone, check_positive, Model, RecoveryReport};
use crate::error::{Error, Result};
use crate::graphs::{path_augment, star_augment, MultiGraph};
use crate::poly::UniPoly;
use crate::ratinterp::{interpolate, normalize, SampleSet, Side};
use crate::rational::Q;

fn qn(n: usize) -> Q {
    Q::from_integer(n.into())
}

/// The augmentation identities are algebraic in the edge weights, so signed
/// weights (bipartite doubles of keep-mode reductions) are accepted. Only
/// positivity guarantees that no sample hits a zero of `Z_M`; when one does,
/// the exact oracle or the interpolation reports it.
fn check_graph(g: &MultiGraph) -> Result<()> {
    if g.edges().iter().any(|e| e.weight.is_zero()) {
        return Err(Error::InvalidInput("monomer-dimer edge weights must be nonzero".into()));
    }
    Ok(())
}

/// Degree at which `U` is interpolated.
fn reduced_degree(n: usize) -> usize {
    if n % 2 == 1 {
        n - 1
    } else {
        n
    }
}

fn finish(
    model: Model,
    n: usize,
    points: Vec<(Q, Q)>,
    lambda_ks: Vec<Q>,
    transcript: Vec<OracleCall>,
) -> Result<RecoveryReport> {
    let m = reduced_degree(n);
    let rep = interpolate(&SampleSet::new(points, m)?)?;
    let rep = normalize(&rep, Side::Denominator, m, &Q::one())?;
    let shift = n - m;
    let z = rep.q.shift(shift);
    // Numerator check: D Z / lambda^shift.
    let expect = z.x_derivative().div_exact(&UniPoly::monomial(Q::one(), shift))?;
    if rep.p != expect {
        return Err(Error::Inconsistent("the recovered numerator is not D Z_M".into()));
    }
    Ok(RecoveryReport {
        model,
        value_at_one: z.eval(&Q::one()),
        perfect_matchings: Some(z.coeff(0)),
        polynomial: z,
        lambda_ks,
        transcript,
        path_doubling: None,
        verified: None,
    })
}

/// Star pipeline: `Z_M(G(k), l) = l^(nk) Z_M(G, l + k/l)` and
/// `U(G(k)) = nk + (l^2 - k)/(l^2 + k) U(G, l + k/l)`; `k = l^2` is skipped.
pub fn recover_matching_star(g: &MultiGraph, lambda: &Q, oracle: &dyn AverageOracle) -> Result<RecoveryReport> {
    check_graph(g)?;
    check_positive(lambda, "lambda")?;
    let n = g.n();
    let needed = 2 * reduced_degree(n) + 2;
    let l2 = lambda * lambda;
    let ks: Vec<usize> = (0..).filter(|&k| qn(k) != l2).take(needed).collect();
    let batch: Vec<_> = ks
        .iter()
        .map(|&k| (k, star_augment(g, k), Query::MonomerCount { lambda: lambda.clone() }))
        .collect();
    let (answers, transcript) = run_queries(oracle, batch)?;
    let mut points = Vec::with_capacity(needed);
    let mut lambda_ks = Vec::with_capacity(needed);
    for (&k, u_h) in ks.iter().zip(answers) {
        let kq = qn(k);
        let lk = lambda + &kq / lambda;
        let factor = (&l2 - &kq) / (&l2 + &kq);
        points.push((lk.clone(), (u_h - qn(n) * &kq) / factor));
        lambda_ks.push(lk);
    }
    check_monotone(&lambda_ks)?;
    finish(Model::Matching, n, points, lambda_ks, transcript)
}

/// Path pipeline over even `k` in `0..=4n+4`:
/// `Z_M(G(k)) = y_k^n Z_M(G, y_{k+1}/y_k)` and
/// `U(G(k)) = n l t_k + l (t_{k+1} - t_k) U(G, l_k)`.
pub fn recover_matching_path(g: &MultiGraph, lambda: &Q, oracle: &dyn AverageOracle) -> Result<RecoveryReport> {
    check_graph(g)?;
    check_positive(lambda, "lambda")?;
    let n = g.n();
    let k_top = 4 * n + 4;
    let st = matching_path_states(lambda, k_top + 1);
    let ks: Vec<usize> = (0..=k_top).step_by(2).collect();
    let batch: Vec<_> = ks
        .iter()
        .map(|&k| {
            (
                k,
                path_augment(g, k, false),
                Query::MonomerCount { lambda: lambda.clone() },
            )
        })
        .collect();
    let (answers, transcript) = run_queries(oracle, batch)?;
    let mut points = Vec::with_capacity(ks.len());
    let mut lambda_ks = Vec::with_capacity(ks.len());
    for (&k, u_h) in ks.iter().zip(answers) {
        let dt = &st[k + 1].t - &st[k].t;
        if dt <= Q::zero() {
            return Err(Error::Inconsistent(format!("t_(k+1) - t_k is not positive at k = {k}")));
        }
        let lk = &st[k + 1].y / &st[k].y;
        let offset = qn(n) * lambda * &st[k].t;
        points.push((lk.clone(), (u_h - offset) / (lambda * dt)));
        lambda_ks.push(lk);
    }
    check_monotone(&lambda_ks)?;
    finish(Model::MatchingPath, n, points, lambda_ks, transcript)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::transfer;
    use crate::rational::{q, qi};
    use crate::reductions::ExactOracle;

    #[test]
    fn star_examples() {
        let p3 = MultiGraph::path(3).unwrap();
        let r = recover_matching_star(&p3, &qi(1), &ExactOracle).unwrap();
        assert_eq!(r.polynomial, UniPoly::from_ints(&[0, 2, 0, 1]));
        assert_eq!(r.perfect_matchings, Some(qi(0)));
        let e = MultiGraph::path(2).unwrap().with_uniform_weight(&qi(3)).unwrap();
        let r = recover_matching_star(&e, &qi(2), &ExactOracle).unwrap();
        assert_eq!(r.polynomial, UniPoly::from_ints(&[3, 0, 1]));
        assert_eq!(r.perfect_matchings, Some(qi(3)));
        // k = lambda^2 = 1 is skipped.
        assert!(r.transcript.iter().all(|c| c.k != 4));
        let r = recover_matching_star(&p3, &qi(1), &ExactOracle).unwrap();
        assert!(r.transcript.iter().all(|c| c.k != 1));
    }

    #[test]
    fn path_examples() {
        let c4 = MultiGraph::cycle(4).unwrap();
        let r = recover_matching_path(&c4, &q(1, 2), &ExactOracle).unwrap();
        assert_eq!(r.polynomial, transfer::matching_poly(&c4));
        assert_eq!(r.perfect_matchings, Some(qi(2)));
        let p5 = MultiGraph::path(5).unwrap();
        let r = recover_matching_path(&p5, &qi(1), &ExactOracle).unwrap();
        assert_eq!(r.polynomial, transfer::matching_poly(&p5));
    }

    #[test]
    fn repeated_zeros_fail_loudly() {
        // K_{1,3}: Z_M = l^2 (l^2 + 3) has a double zero at 0.
        let s = MultiGraph::star(3).unwrap();
        assert!(recover_matching_star(&s, &qi(2), &ExactOracle).is_err());
    }
}
