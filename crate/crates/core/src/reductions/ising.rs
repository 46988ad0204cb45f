//! Ising pipelines: pendant stars, pendant paths, and the susceptibility.

use num::{One, Zero};

use super::oracle::{run_queries, AverageOracle, Query};
use super::states::ising_path_states;
use super::{
    check_connected, check_ferro_beta, check_monotone, check_positive, interpolate_log_derivative, Model,
    RecoveryReport,
};
use crate::error::{Error, Result};
use crate::graphs::{path_augment, star_augment, MultiGraph};
use crate::ratinterp::{interpolate, normalize, SampleSet, Side};
use crate::rational::{pow, sqrt_exact, Q};

fn qn(n: usize) -> Q {
    Q::from_integer(n.into())
}

/// Star pipeline. Attaching `k` leaves to every vertex gives
/// `Z(G(k), l) = (1 + b l)^(nk) Z(G, l_k)` with
/// `l_k = l ((b + l)/(1 + b l))^k`, so
/// `M(G(k)) = nk b l/(1 + b l) + [1 + k l (1 - b^2)/((1 + b l)(b + l))] M(G, l_k)`.
/// Activities below 1 are handled by spin flip: `M(H, l) = |V(H)| - M(H, 1/l)`.
pub fn recover_ising_star(g: &MultiGraph, beta: &Q, lambda: &Q, oracle: &dyn AverageOracle) -> Result<RecoveryReport> {
    check_connected(g)?;
    check_ferro_beta(beta)?;
    check_positive(lambda, "lambda")?;
    if lambda.is_one() {
        return Err(Error::InvalidInput(
            "lambda = 1 gives a single interpolation point".into(),
        ));
    }
    let flip = *lambda < Q::one();
    let l = if flip { lambda.recip() } else { lambda.clone() };
    let n = g.n();
    let one = Q::one();
    let ratio = (beta + &l) / (&one + beta * &l);
    let batch: Vec<_> = (0..=2 * n + 1)
        .map(|k| {
            let query = Query::Magnetization {
                beta: beta.clone(),
                lambda: lambda.clone(),
            };
            (k, star_augment(g, k), query)
        })
        .collect();
    let sizes: Vec<usize> = batch.iter().map(|(_, h, _)| h.n()).collect();
    let (answers, transcript) = run_queries(oracle, batch)?;
    let mut points = Vec::with_capacity(answers.len());
    let mut lambda_ks = Vec::with_capacity(answers.len());
    for (k, (m_h, size)) in answers.into_iter().zip(sizes).enumerate() {
        let m_h = if flip { qn(size) - m_h } else { m_h };
        let kq = qn(k);
        let offset = qn(n) * &kq * beta * &l / (&one + beta * &l);
        let factor = &one + &kq * &l * (&one - beta * beta) / ((&one + beta * &l) * (beta + &l));
        let lk = &l * pow(&ratio, k);
        points.push((lk.clone(), (m_h - offset) / factor));
        lambda_ks.push(lk);
    }
    check_monotone(&lambda_ks)?;
    let z = interpolate_log_derivative(points, n, 0, &one)?;
    Ok(report(Model::Ising, z, lambda_ks, transcript))
}

fn report(
    model: Model,
    z: crate::poly::UniPoly,
    lambda_ks: Vec<Q>,
    transcript: Vec<super::OracleCall>,
) -> RecoveryReport {
    RecoveryReport {
        model,
        value_at_one: z.eval(&Q::one()),
        polynomial: z,
        lambda_ks,
        transcript,
        perfect_matchings: None,
        path_doubling: None,
        verified: None,
    }
}

/// Path pipeline: `Z(G(k), l) = (p^-_{k+1})^n Z(G, r_{k+1})`, hence
/// `M(G(k)) = n l p'^-/p^- + (l r'/r) M(G, r_{k+1})` at index `k + 1`.
/// Every queried graph has maximum degree at most one more than `g`'s.
pub fn recover_ising_path(g: &MultiGraph, beta: &Q, lambda: &Q, oracle: &dyn AverageOracle) -> Result<RecoveryReport> {
    check_connected(g)?;
    check_ferro_beta(beta)?;
    check_positive(lambda, "lambda")?;
    if lambda.is_one() {
        return Err(Error::InvalidInput(
            "lambda = 1 gives a single interpolation point".into(),
        ));
    }
    let n = g.n();
    let k_max = 2 * n + 2;
    let states = ising_path_states(beta, lambda, k_max + 1);
    let mut batch = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let h = path_augment(g, k, false);
        // Interior path vertices have degree 2 even when g has no edges.
        if h.max_degree() > (g.max_degree() + 1).max(2) {
            return Err(Error::Inconsistent(
                "path augmentation raised the degree by more than 1".into(),
            ));
        }
        batch.push((
            k,
            h,
            Query::Magnetization {
                beta: beta.clone(),
                lambda: lambda.clone(),
            },
        ));
    }
    let (answers, transcript) = run_queries(oracle, batch)?;
    let mut points = Vec::with_capacity(k_max);
    let mut lambda_ks = Vec::with_capacity(k_max);
    for (i, m_h) in answers.into_iter().enumerate() {
        let s = &states[i + 1]; // index k + 1 for k = i + 1
        if s.r_dot <= Q::zero() {
            return Err(Error::Inconsistent("r_dot must be positive".into()));
        }
        let offset = qn(n) * lambda * &s.p_minus_dot / &s.p_minus;
        let factor = lambda * &s.r_dot / &s.r;
        points.push((s.r.clone(), (m_h - offset) / factor));
        lambda_ks.push(s.r.clone());
    }
    check_monotone(&lambda_ks)?;
    let z = interpolate_log_derivative(points, n, 0, &Q::one())?;
    Ok(report(Model::IsingPath, z, lambda_ks, transcript))
}

/// Susceptibility pipeline: `chi = (Z D^2 Z - (DZ)^2) / Z^2` is sampled at
/// `l_j = j/(4n+2)`, `j = 1..=4n+2`, and interpolated at degree `2n`; pinning
/// the constant term of the denominator to 1 gives `Z^2`. The report's
/// polynomial is `Z^2`; `value_at_one` is `Z(1) = +sqrt(Z^2(1))`.
pub fn recover_via_susceptibility(g: &MultiGraph, beta: &Q, oracle: &dyn AverageOracle) -> Result<RecoveryReport> {
    check_connected(g)?;
    check_ferro_beta(beta)?;
    let n = g.n();
    let m = 4 * n + 2;
    let lambda_ks: Vec<Q> = (1..=m).map(|j| Q::new(j.into(), m.into())).collect();
    let batch: Vec<_> = lambda_ks
        .iter()
        .enumerate()
        .map(|(j, l)| {
            (
                j + 1,
                g.clone(),
                Query::Susceptibility {
                    beta: beta.clone(),
                    lambda: l.clone(),
                },
            )
        })
        .collect();
    let (answers, transcript) = run_queries(oracle, batch)?;
    let points: Vec<(Q, Q)> = lambda_ks.iter().cloned().zip(answers).collect();
    let rep = interpolate(&SampleSet::new(points, 2 * n)?)?;
    let rep = normalize(&rep, Side::Denominator, 0, &Q::one())?;
    let z2 = rep.q;
    let z = z2
        .sqrt_exact()
        .ok_or_else(|| Error::Inconsistent("the recovered denominator is not a square".into()))?;
    let at_one =
        sqrt_exact(&z2.eval(&Q::one())).ok_or_else(|| Error::Inconsistent("Z^2(1) is not a rational square".into()))?;
    if at_one != z.eval(&Q::one()) {
        return Err(Error::Inconsistent("square roots disagree".into()));
    }
    // The numerator must be Z D^2 Z - (DZ)^2 for the recovered Z.
    let dz = z.x_derivative();
    if rep.p != &(&z * &dz.x_derivative()) - &(&dz * &dz) {
        return Err(Error::Inconsistent(
            "the recovered numerator is not the variance numerator".into(),
        ));
    }
    let mut r = report(Model::Susceptibility, z2, lambda_ks, transcript);
    r.value_at_one = at_one;
    Ok(r)
}
