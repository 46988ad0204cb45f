//! Recovery of partition functions from average-value oracles: augment the
//! graph, query the oracle, undo the augmentation's affine effect on the
//! average, and interpolate the resulting rational function.

pub mod ising;
pub mod matching;
pub mod oracle;
pub mod states;
pub mod twospin;

use num::{One, Signed};
use serde::Serialize;

pub use ising::{recover_ising_path, recover_ising_star, recover_via_susceptibility};
pub use matching::{recover_matching_path, recover_matching_star};
pub use oracle::{AverageOracle, ExactOracle, OracleCall, Query};
pub use states::{
    ising_path_state, matching_path_state, twospin_path_state, IsingPathState, MatchingPathState, TwoSpinPathState,
};
pub use twospin::{planar_identity_holds, recover_twospin, twospin_translate};

use crate::error::{Error, Result};
use crate::graphs::{MultiGraph, PathDoubling};
use crate::partition::transfer;
use crate::poly::UniPoly;
use crate::ratinterp::{interpolate, normalize, SampleSet, Side};
use crate::rational::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Model {
    Ising,
    IsingPath,
    Susceptibility,
    Matching,
    MatchingPath,
    Twospin,
}

impl std::str::FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "ising" => Model::Ising,
            "ising-path" => Model::IsingPath,
            "susceptibility" => Model::Susceptibility,
            "matching" => Model::Matching,
            "matching-path" => Model::MatchingPath,
            "twospin" => Model::Twospin,
            _ => return Err(Error::InvalidInput(format!("unknown model {s:?}"))),
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RecoveryReport {
    pub model: Model,
    pub polynomial: UniPoly,
    #[serde(serialize_with = "crate::rational::serialize_q_vec")]
    pub lambda_ks: Vec<Q>,
    pub transcript: Vec<OracleCall>,
    #[serde(serialize_with = "crate::rational::serialize_q")]
    pub value_at_one: Q,
    /// Constant term of a recovered matching polynomial: the total weight of
    /// perfect matchings.
    #[serde(skip_serializing_if = "Option::is_none", serialize_with = "serialize_opt_q")]
    pub perfect_matchings: Option<Q>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub path_doubling: Option<PathDoubling>,
    /// Set by [`RecoveryReport::verify`].
    pub verified: Option<bool>,
}

fn serialize_opt_q<S: serde::Serializer>(x: &Option<Q>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(q) => crate::rational::serialize_q(q, s),
        None => s.serialize_none(),
    }
}

impl RecoveryReport {
    /// Compares with a directly computed polynomial and records the result.
    pub fn verify(&mut self, direct: &UniPoly) -> bool {
        let ok = &self.polynomial == direct;
        self.verified = Some(ok);
        ok
    }
}

/// Parameters of a recovery run (only the ones the model uses matter).
#[derive(Clone, Debug)]
pub struct Params {
    pub beta: Q,
    pub lambda: Q,
    pub alpha1: Q,
    pub alpha2: Q,
}

/// Runs the pipeline for `model`.
pub fn recover(model: Model, g: &MultiGraph, p: &Params, oracle: &dyn AverageOracle) -> Result<RecoveryReport> {
    match model {
        Model::Ising => recover_ising_star(g, &p.beta, &p.lambda, oracle),
        Model::IsingPath => recover_ising_path(g, &p.beta, &p.lambda, oracle),
        Model::Susceptibility => recover_via_susceptibility(g, &p.beta, oracle),
        Model::Matching => recover_matching_star(g, &p.lambda, oracle),
        Model::MatchingPath => recover_matching_path(g, &p.lambda, oracle),
        Model::Twospin => recover_twospin(g, &p.alpha1, &p.alpha2, &p.lambda, oracle),
    }
}

/// The polynomial a pipeline should recover, computed directly.
pub fn direct_polynomial(model: Model, g: &MultiGraph, p: &Params) -> UniPoly {
    match model {
        Model::Ising | Model::IsingPath => transfer::ising_poly(g, &p.beta),
        Model::Susceptibility => transfer::ising_poly(g, &p.beta).pow(2),
        Model::Matching | Model::MatchingPath => transfer::matching_poly(g),
        Model::Twospin => transfer::twospin_poly(g, &p.alpha1, &p.alpha2),
    }
}

pub(crate) fn check_ferro_beta(beta: &Q) -> Result<()> {
    if !beta.is_positive() || *beta >= Q::one() {
        return Err(Error::InvalidInput("the pipelines need 0 < beta < 1".into()));
    }
    Ok(())
}

pub(crate) fn check_positive(x: &Q, what: &str) -> Result<()> {
    if !x.is_positive() {
        return Err(Error::InvalidInput(format!("{what} must be positive")));
    }
    Ok(())
}

pub(crate) fn check_connected(g: &MultiGraph) -> Result<()> {
    if !g.is_connected() {
        return Err(Error::Precondition("the pipelines need a connected graph".into()));
    }
    Ok(())
}

/// Aborts unless the sample abscissae are strictly monotone (which implies
/// pairwise distinct).
pub(crate) fn check_monotone(xs: &[Q]) -> Result<()> {
    let inc = xs.windows(2).all(|w| w[0] < w[1]);
    let dec = xs.windows(2).all(|w| w[0] > w[1]);
    if !(inc || dec) {
        return Err(Error::Inconsistent(
            "the interpolation points are not strictly monotone".into(),
        ));
    }
    Ok(())
}

/// Interpolates `D Z / Z` of degree `n` over `n` and pins the denominator
/// coefficient `pin_index` to `pin_value`; the numerator is checked against
/// `D` of the recovered denominator.
pub(crate) fn interpolate_log_derivative(
    points: Vec<(Q, Q)>,
    degree: usize,
    pin_index: usize,
    pin_value: &Q,
) -> Result<UniPoly> {
    let rep = interpolate(&SampleSet::new(points, degree)?)?;
    let rep = normalize(&rep, Side::Denominator, pin_index, pin_value)?;
    if rep.p != rep.q.x_derivative() {
        return Err(Error::Inconsistent(
            "the recovered numerator is not the lambda-derivative of the denominator".into(),
        ));
    }
    Ok(rep.q)
}
