//! The average-value oracle contract and the exact default oracle.

use num::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::MultiGraph;
use crate::partition::transfer;
use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Query {
    Magnetization {
        #[serde(serialize_with = "crate::rational::serialize_q")]
        beta: Q,
        #[serde(serialize_with = "crate::rational::serialize_q")]
        lambda: Q,
    },
    Susceptibility {
        #[serde(serialize_with = "crate::rational::serialize_q")]
        beta: Q,
        #[serde(serialize_with = "crate::rational::serialize_q")]
        lambda: Q,
    },
    MonomerCount {
        #[serde(serialize_with = "crate::rational::serialize_q")]
        lambda: Q,
    },
    TwoSpinMagnetization {
        #[serde(serialize_with = "crate::rational::serialize_q")]
        alpha1: Q,
        #[serde(serialize_with = "crate::rational::serialize_q")]
        alpha2: Q,
        #[serde(serialize_with = "crate::rational::serialize_q")]
        lambda: Q,
    },
}

/// Anything that answers Gibbs averages on arbitrary graphs.
pub trait AverageOracle: Sync {
    fn query(&self, g: &MultiGraph, q: &Query) -> Result<Q>;
}

/// Answers every query exactly from the transfer computation.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExactOracle;

fn ratio(num: &Q, den: &Q) -> Result<Q> {
    if den.is_zero() {
        return Err(Error::Inconsistent("the partition function vanishes".into()));
    }
    Ok(num / den)
}

impl AverageOracle for ExactOracle {
    fn query(&self, g: &MultiGraph, q: &Query) -> Result<Q> {
        match q {
            Query::Magnetization { beta, lambda } => {
                let j = transfer::ising_jet(g, beta, lambda);
                ratio(j.d1(), j.value())
            }
            Query::Susceptibility { beta, lambda } => {
                let j = transfer::ising_jet(g, beta, lambda);
                let m = ratio(j.d1(), j.value())?;
                Ok(ratio(j.d2(), j.value())? - &m * &m)
            }
            Query::MonomerCount { lambda } => {
                let j = transfer::matching_jet(g, lambda);
                ratio(j.d1(), j.value())
            }
            Query::TwoSpinMagnetization { alpha1, alpha2, lambda } => {
                let j = transfer::twospin_jet(g, alpha1, alpha2, lambda);
                ratio(j.d1(), j.value())
            }
        }
    }
}

/// One oracle call: which augmentation (`k`), the size of the queried graph,
/// the query and the answer.
#[derive(Clone, Debug, Serialize)]
pub struct OracleCall {
    pub k: usize,
    pub vertices: usize,
    pub edges: usize,
    pub query: Query,
    #[serde(serialize_with = "crate::rational::serialize_q")]
    pub answer: Q,
}

/// Answers a batch of queries (concurrently; the oracle is `Sync`) and
/// returns the answers with a transcript ordered as the input.
pub fn run_queries(
    oracle: &dyn AverageOracle,
    batch: Vec<(usize, MultiGraph, Query)>,
) -> Result<(Vec<Q>, Vec<OracleCall>)> {
    let answers: Vec<Result<Q>> = batch.par_iter().map(|(_, g, q)| oracle.query(g, q)).collect();
    let mut values = Vec::with_capacity(batch.len());
    let mut transcript = Vec::with_capacity(batch.len());
    for ((k, g, query), a) in batch.into_iter().zip(answers) {
        let answer = a?;
        values.push(answer.clone());
        transcript.push(OracleCall {
            k,
            vertices: g.n(),
            edges: g.edge_count(),
            query,
            answer,
        });
    }
    Ok((values, transcript))
}
