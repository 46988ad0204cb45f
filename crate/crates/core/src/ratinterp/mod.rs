//! Exact recovery of a rational function `p/q` (both of degree at most `n`)
//! from `2n + 2` or more point evaluations, by fraction-free elimination of
//! the homogeneous system `p(x_i) - R(x_i) q(x_i) = 0`.

mod bareiss;

use std::collections::BTreeSet;

use num::{BigInt, Zero};
use serde::Serialize;

pub use bareiss::{echelon, nullspace, Echelon};

use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::rational::{lcm_of_denominators, Q};

#[derive(Clone, Debug)]
pub struct SampleSet {
    points: Vec<(Q, Q)>,
    degree: usize,
}

impl SampleSet {
    pub fn new(points: Vec<(Q, Q)>, degree: usize) -> Result<Self> {
        let distinct: BTreeSet<&Q> = points.iter().map(|(x, _)| x).collect();
        if distinct.len() != points.len() {
            return Err(Error::InvalidInput("sample points must be pairwise distinct".into()));
        }
        if points.len() < 2 * degree + 2 {
            return Err(Error::InvalidInput(format!(
                "{} samples given, at least {} needed for degree {degree}",
                points.len(),
                2 * degree + 2
            )));
        }
        Ok(SampleSet { points, degree })
    }

    pub fn points(&self) -> &[(Q, Q)] {
        &self.points
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Numerator,
    Denominator,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Normalization {
    pub side: Side,
    pub index: usize,
    #[serde(serialize_with = "crate::rational::serialize_q")]
    pub value: Q,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RationalFunctionRep {
    pub p: UniPoly,
    pub q: UniPoly,
    /// `None` while the pair is only known up to a scalar (then it is the
    /// primitive integer representative).
    pub normalization: Option<Normalization>,
}

impl RationalFunctionRep {
    pub fn eval(&self, x: &Q) -> Option<Q> {
        let d = self.q.eval(x);
        (!d.is_zero()).then(|| self.p.eval(x) / d)
    }
}

/// Solves for `(p, q)` with `deg p, deg q <= n`. The solution ray must be
/// unique (nullity exactly 1); it is returned as the primitive integer
/// vector whose first nonzero entry is positive.
pub fn interpolate(samples: &SampleSet) -> Result<RationalFunctionRep> {
    let n = samples.degree;
    let cols = 2 * n + 2;
    let rows: Vec<Vec<BigInt>> = samples
        .points
        .iter()
        .map(|(x, r)| {
            let mut row: Vec<Q> = Vec::with_capacity(cols);
            let mut xp = Q::from_integer(1.into());
            let mut powers = Vec::with_capacity(n + 1);
            for _ in 0..=n {
                powers.push(xp.clone());
                xp *= x;
            }
            row.extend(powers.iter().cloned());
            row.extend(powers.iter().map(|t| -(t * r)));
            let l = lcm_of_denominators(&row);
            row.iter()
                .map(|c| (c * Q::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    let basis = nullspace(rows, cols);
    if basis.len() != 1 {
        return Err(Error::RankDeficient { nullity: basis.len() });
    }
    let v = &basis[0];
    let p = UniPoly::from_integers(&v[..=n]);
    let q = UniPoly::from_integers(&v[n + 1..]);
    if q.is_zero() {
        return Err(Error::Inconsistent(
            "the recovered denominator is identically zero".into(),
        ));
    }
    for (x, r) in &samples.points {
        let qx = q.eval(x);
        if qx.is_zero() {
            return Err(Error::Inconsistent(format!("the denominator vanishes at sample {x}")));
        }
        if &(p.eval(x) / qx) != r {
            return Err(Error::Inconsistent(format!("the recovered function misses sample {x}")));
        }
    }
    if !p.gcd(&q).is_constant() {
        return Err(Error::Inconsistent("numerator and denominator share a factor".into()));
    }
    Ok(RationalFunctionRep {
        p,
        q,
        normalization: None,
    })
}

/// Scales `(p, q)` so the pinned coefficient equals `value`.
pub fn normalize(rep: &RationalFunctionRep, side: Side, index: usize, value: &Q) -> Result<RationalFunctionRep> {
    let pinned = match side {
        Side::Numerator => rep.p.coeff(index),
        Side::Denominator => rep.q.coeff(index),
    };
    if pinned.is_zero() || value.is_zero() {
        return Err(Error::NormalizationImpossible);
    }
    let c = value / pinned;
    Ok(RationalFunctionRep {
        p: rep.p.scale(&c),
        q: rep.q.scale(&c),
        normalization: Some(Normalization {
            side,
            index,
            value: value.clone(),
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    fn samples_of(p: &UniPoly, qq: &UniPoly, xs: &[Q], n: usize) -> SampleSet {
        SampleSet::new(xs.iter().map(|x| (x.clone(), p.eval(x) / qq.eval(x))).collect(), n).unwrap()
    }

    #[test]
    fn spec_example() {
        let pts = vec![(qi(1), qi(1)), (qi(2), q(4, 5)), (qi(3), q(5, 7)), (qi(4), q(2, 3))];
        let rep = interpolate(&SampleSet::new(pts, 1).unwrap()).unwrap();
        assert_eq!(rep.p, UniPoly::from_ints(&[2, 1]));
        assert_eq!(rep.q, UniPoly::from_ints(&[1, 2]));
        let pinned = normalize(&rep, Side::Denominator, 0, &qi(1)).unwrap();
        assert_eq!(pinned.q, UniPoly::from_ints(&[1, 2]));
        let ray = RationalFunctionRep {
            p: UniPoly::from_ints(&[4, 2]),
            q: UniPoly::from_ints(&[2, 4]),
            normalization: None,
        };
        let pinned = normalize(&ray, Side::Numerator, 1, &qi(1)).unwrap();
        assert_eq!(
            (pinned.p, pinned.q),
            (UniPoly::from_ints(&[2, 1]), UniPoly::from_ints(&[1, 2]))
        );
        assert!(matches!(
            normalize(&ray, Side::Numerator, 5, &qi(1)),
            Err(Error::NormalizationImpossible)
        ));
    }

    #[test]
    fn constant_function() {
        let rep = interpolate(&SampleSet::new(vec![(qi(0), qi(1)), (qi(1), qi(1))], 0).unwrap()).unwrap();
        assert_eq!((rep.p, rep.q), (UniPoly::one(), UniPoly::one()));
    }

    #[test]
    fn common_factor_is_rank_deficient() {
        let p = UniPoly::from_ints(&[0, 1, 1]);
        let qq = UniPoly::from_ints(&[-1, 0, 1]);
        let xs: Vec<Q> = (2..8).map(qi).collect();
        let s = samples_of(&p, &qq, &xs, 2);
        assert!(matches!(interpolate(&s), Err(Error::RankDeficient { nullity: 2 })));
    }

    #[test]
    fn extra_rows_and_validation() {
        let p = UniPoly::from_ints(&[1, 0, 3]);
        let qq = UniPoly::from_ints(&[5, 1, 1]);
        let xs: Vec<Q> = (0..9).map(|k| q(k, 3)).collect();
        let rep = interpolate(&samples_of(&p, &qq, &xs, 2)).unwrap();
        assert_eq!((rep.p, rep.q), (p, qq));
        assert!(SampleSet::new(vec![(qi(1), qi(1)), (qi(1), qi(2))], 0).is_err());
        assert!(SampleSet::new(vec![(qi(1), qi(1))], 0).is_err());
        // Inconsistent data: no degree-0 function fits.
        let bad = SampleSet::new(vec![(qi(0), qi(1)), (qi(1), qi(2))], 0).unwrap();
        assert!(interpolate(&bad).is_err());
    }
}
