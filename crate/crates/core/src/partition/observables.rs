//! Gibbs averages as exact rationals.

use num::{Signed, Zero};
use serde::Serialize;

use super::enumerate::{ising_energy_poly, EnumCaps};
use super::transfer;
use crate::error::{Error, Result};
use crate::graphs::MultiGraph;
use crate::rational::{fmt_q, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ObservableKind {
    Magnetization,
    MeanEnergy,
    Susceptibility,
    MonomerCount,
    DimerCount,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ObservableValue {
    pub kind: ObservableKind,
    pub value: Q,
}

impl Serialize for ObservableValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ObservableValue", 2)?;
        st.serialize_field("kind", &self.kind)?;
        st.serialize_field("value", &fmt_q(&self.value))?;
        st.end()
    }
}

fn check_lambda(lambda: &Q) -> Result<()> {
    if !lambda.is_positive() {
        return Err(Error::InvalidInput("the activity must be positive".into()));
    }
    Ok(())
}

fn check_beta(beta: &Q) -> Result<()> {
    if !beta.is_positive() || *beta > Q::from_integer(1.into()) {
        return Err(Error::InvalidInput("the edge potential must lie in (0, 1]".into()));
    }
    Ok(())
}

/// `<p> = DZ/Z` with `D = lambda d/dlambda`.
pub fn magnetization(g: &MultiGraph, beta: &Q, lambda: &Q) -> Result<Q> {
    check_beta(beta)?;
    check_lambda(lambda)?;
    let j = transfer::ising_jet(g, beta, lambda);
    assert!(!j.value().is_zero(), "Z vanishes at a positive activity");
    Ok(j.d1() / j.value())
}

/// `chi = <p^2> - <p>^2 = D^2 Z / Z - (DZ/Z)^2`.
pub fn susceptibility(g: &MultiGraph, beta: &Q, lambda: &Q) -> Result<Q> {
    check_beta(beta)?;
    check_lambda(lambda)?;
    let j = transfer::ising_jet(g, beta, lambda);
    let m = j.d1() / j.value();
    Ok(j.d2() / j.value() - &m * &m)
}

/// `<d>`, the mean number of disagreeing edges (by enumeration).
pub fn mean_energy(g: &MultiGraph, beta: &Q, lambda: &Q, caps: &EnumCaps) -> Result<Q> {
    check_beta(beta)?;
    check_lambda(lambda)?;
    let num = ising_energy_poly(g, beta, caps)?;
    let z = super::enumerate::ising_poly_with(g, beta, caps)?;
    Ok(num.eval(lambda) / z.eval(lambda))
}

/// `<u> = DZ_M / Z_M`, the mean number of unmatched vertices.
pub fn monomer_count(g: &MultiGraph, lambda: &Q) -> Result<Q> {
    check_lambda(lambda)?;
    if !g.has_positive_weights() {
        return Err(Error::InvalidInput("monomer-dimer weights must be positive".into()));
    }
    let j = transfer::matching_jet(g, lambda);
    Ok(j.d1() / j.value())
}

/// Mean number of matched edges, `(n - <u>)/2`.
pub fn dimer_count(g: &MultiGraph, lambda: &Q) -> Result<Q> {
    let u = monomer_count(g, lambda)?;
    Ok((Q::from_integer(g.n().into()) - u) / Q::from_integer(2.into()))
}

/// Magnetization, mean energy and susceptibility of the Ising model.
pub fn ising_observables(g: &MultiGraph, beta: &Q, lambda: &Q, caps: &EnumCaps) -> Result<Vec<ObservableValue>> {
    Ok(vec![
        ObservableValue {
            kind: ObservableKind::Magnetization,
            value: magnetization(g, beta, lambda)?,
        },
        ObservableValue {
            kind: ObservableKind::MeanEnergy,
            value: mean_energy(g, beta, lambda, caps)?,
        },
        ObservableValue {
            kind: ObservableKind::Susceptibility,
            value: susceptibility(g, beta, lambda)?,
        },
    ])
}

pub fn matching_observables(g: &MultiGraph, lambda: &Q) -> Result<Vec<ObservableValue>> {
    Ok(vec![
        ObservableValue {
            kind: ObservableKind::MonomerCount,
            value: monomer_count(g, lambda)?,
        },
        ObservableValue {
            kind: ObservableKind::DimerCount,
            value: dimer_count(g, lambda)?,
        },
    ])
}
