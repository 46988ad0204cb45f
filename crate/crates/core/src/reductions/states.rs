//! Pendant-path recurrence states. `p^+`/`p^-` are partition functions of a
//! path of `k` vertices whose end vertex (the one nearest the host) is
//! `+`/`-`, with that end vertex's activity included; dots are `d/dlambda`.

use num::{One, Zero};
use serde::Serialize;

use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsingPathState {
    pub k: usize,
    #[serde(serialize_with = "crate::rational::serialize_q")]
    pub p_plus: Q,
    #[serde(serialize_with = "crate::rational::serialize_q")]
    pub p_minus: Q,
    #[serde(serialize_with = "crate::rational::serialize_q")]
    pub r: Q,
    #[serde(serialize_with = "crate::rational::serialize_q")]
    pub p_plus_dot: Q,
    #[serde(serialize_with = "crate::rational::serialize_q")]
    pub p_minus_dot: Q,
    #[serde(serialize_with = "crate::rational::serialize_q")]
    pub r_dot: Q,
}

impl IsingPathState {
    fn first(lambda: &Q) -> Self {
        IsingPathState {
            k: 1,
            p_plus: lambda.clone(),
            p_minus: Q::one(),
            r: lambda.clone(),
            p_plus_dot: Q::one(),
            p_minus_dot: Q::zero(),
            r_dot: Q::one(),
        }
    }

    fn next(&self, beta: &Q, lambda: &Q) -> Self {
        let inner = beta * &self.p_minus + &self.p_plus;
        let p_plus = lambda * &inner;
        let p_minus = beta * &self.p_plus + &self.p_minus;
        let p_plus_dot = &inner + lambda * (beta * &self.p_minus_dot + &self.p_plus_dot);
        let p_minus_dot = beta * &self.p_plus_dot + &self.p_minus_dot;
        let r = &p_plus / &p_minus;
        let r_dot = (&p_plus_dot * &p_minus - &p_plus * &p_minus_dot) / (&p_minus * &p_minus);
        IsingPathState {
            k: self.k + 1,
            p_plus,
            p_minus,
            r,
            p_plus_dot,
            p_minus_dot,
            r_dot,
        }
    }
}

/// States `1..=k_max` (index `i` holds `k = i + 1`).
pub fn ising_path_states(beta: &Q, lambda: &Q, k_max: usize) -> Vec<IsingPathState> {
    let mut out = Vec::with_capacity(k_max);
    if k_max == 0 {
        return out;
    }
    out.push(IsingPathState::first(lambda));
    while out.len() < k_max {
        let s = out.last().unwrap().next(beta, lambda);
        out.push(s);
    }
    out
}

pub fn ising_path_state(beta: &Q, lambda: &Q, k: usize) -> IsingPathState {
    assert!(k >= 1, "path states start at k = 1");
    ising_path_states(beta, lambda, k).pop().unwrap()
}

/// `y_k` is the matching polynomial of the path on `k` vertices.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MatchingPathState {
    pub k: usize,
    #[serde(serialize_with = "crate::rational::serialize_q")]
    pub y: Q,
    #[serde(serialize_with = "crate::rational::serialize_q")]
    pub y_dot: Q,
    #[serde(serialize_with = "crate::rational::serialize_q")]
    pub t: Q,
}

/// States `0..=k_max`.
pub fn matching_path_states(lambda: &Q, k_max: usize) -> Vec<MatchingPathState> {
    let mut y = vec![Q::one(), lambda.clone()];
    let mut yd = vec![Q::zero(), Q::one()];
    for k in 2..=k_max {
        let v = lambda * &y[k - 1] + &y[k - 2];
        let d = &y[k - 1] + lambda * &yd[k - 1] + &yd[k - 2];
        y.push(v);
        yd.push(d);
    }
    (0..=k_max)
        .map(|k| MatchingPathState {
            k,
            t: &yd[k] / &y[k],
            y: y[k].clone(),
            y_dot: yd[k].clone(),
        })
        .collect()
}

pub fn matching_path_state(lambda: &Q, k: usize) -> MatchingPathState {
    matching_path_states(lambda, k).pop().unwrap()
}

/// Two-spin path state; `m^+`/`m^-` are the expected numbers of `+` spins on
/// the path given the end vertex's spin.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TwoSpinPathState {
    pub k: usize,
    #[serde(serialize_with = "crate::rational::serialize_q")]
    pub p_plus: Q,
    #[serde(serialize_with = "crate::rational::serialize_q")]
    pub p_minus: Q,
    #[serde(serialize_with = "crate::rational::serialize_q")]
    pub r: Q,
    #[serde(serialize_with = "crate::rational::serialize_q")]
    pub m_plus: Q,
    #[serde(serialize_with = "crate::rational::serialize_q")]
    pub m_minus: Q,
}

impl TwoSpinPathState {
    pub fn first(lambda: &Q) -> Self {
        TwoSpinPathState {
            k: 1,
            p_plus: lambda.clone(),
            p_minus: Q::one(),
            r: lambda.clone(),
            m_plus: Q::one(),
            m_minus: Q::zero(),
        }
    }

    /// Prepends one vertex joined to the current end by an edge with
    /// potentials `(a1, a2)` (squared potentials model a doubled edge).
    pub fn extend(&self, a1: &Q, a2: &Q, lambda: &Q) -> Self {
        let plus_in = a1 * &self.p_plus + &self.p_minus;
        let minus_in = a2 * &self.p_minus + &self.p_plus;
        let m_plus = Q::one() + (a1 * &self.m_plus * &self.p_plus + &self.m_minus * &self.p_minus) / &plus_in;
        let m_minus = (a2 * &self.m_minus * &self.p_minus + &self.m_plus * &self.p_plus) / &minus_in;
        let p_plus = lambda * plus_in;
        let r = &p_plus / &minus_in;
        TwoSpinPathState {
            k: self.k + 1,
            p_plus,
            p_minus: minus_in,
            r,
            m_plus,
            m_minus,
        }
    }
}

/// State of a path on `k` vertices; with `doubled`, every edge inside the
/// path is a parallel pair (potentials squared for the steps `k >= 2`).
pub fn twospin_path_state(a1: &Q, a2: &Q, lambda: &Q, k: usize, doubled: bool) -> TwoSpinPathState {
    assert!(k >= 1, "path states start at k = 1");
    let (b1, b2) = if doubled {
        (a1 * a1, a2 * a2)
    } else {
        (a1.clone(), a2.clone())
    };
    let mut s = TwoSpinPathState::first(lambda);
    for _ in 1..k {
        s = s.extend(&b1, &b2, lambda);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi, to_f64};

    #[test]
    fn ising_examples() {
        let s1 = ising_path_state(&q(1, 2), &qi(3), 1);
        assert_eq!((s1.p_minus, s1.p_plus.clone(), s1.r), (qi(1), qi(3), qi(3)));
        let (b, l) = (q(1, 3), q(5, 2));
        assert_eq!(ising_path_state(&b, &l, 2).r, &l * (&b + &l) / (qi(1) + &b * &l));
        assert_eq!(ising_path_state(&q(1, 2), &qi(2), 2).r, q(5, 2));
        for s in ising_path_states(&q(1, 2), &q(3, 2), 12) {
            assert!(s.r_dot > qi(0));
        }
    }

    #[test]
    fn ising_derivatives_match_difference_quotients() {
        // p_k^± are polynomials in lambda; check the dots against exact
        // derivatives of the polynomials built by the same recurrence.
        use crate::poly::UniPoly;
        let b = q(2, 5);
        let mut pp = UniPoly::x();
        let mut pm = UniPoly::one();
        for k in 2..=6 {
            let np = &UniPoly::x() * &(&pm.scale(&b) + &pp);
            let nm = &pp.scale(&b) + &pm;
            pp = np;
            pm = nm;
            let l = q(7, 3);
            let s = ising_path_state(&b, &l, k);
            assert_eq!(s.p_plus, pp.eval(&l));
            assert_eq!(s.p_plus_dot, pp.derivative().eval(&l));
            assert_eq!(s.p_minus_dot, pm.derivative().eval(&l));
        }
    }

    #[test]
    fn matching_examples() {
        let ys: Vec<Q> = matching_path_states(&qi(1), 5).into_iter().map(|s| s.y).collect();
        assert_eq!(ys, [1, 1, 2, 3, 5, 8].map(qi).to_vec());
        let st = matching_path_states(&qi(1), 5);
        let lk = |k: usize| &st[k + 1].y / &st[k].y;
        assert_eq!((lk(0), lk(2), lk(4)), (qi(1), q(3, 2), q(8, 5)));
        // Closed forms y_k = (xi^(k+1) - eta^(k+1)) / (xi - eta).
        for l in [q(1, 2), qi(1), qi(3)] {
            let lf = to_f64(&l);
            let s = (lf * lf + 4.0).sqrt();
            let (xi, eta) = ((lf + s) / 2.0, (lf - s) / 2.0);
            assert!((xi * eta + 1.0).abs() < 1e-12 && (xi + eta - lf).abs() < 1e-12);
            for st in matching_path_states(&l, 10) {
                let k = st.k as i32;
                let closed = (xi.powi(k + 1) - eta.powi(k + 1)) / (xi - eta);
                assert!((closed - to_f64(&st.y)).abs() < 1e-9 * closed.abs().max(1.0));
            }
            for k in (0..10).step_by(2) {
                let st = matching_path_states(&l, k + 1);
                assert!(st[k + 1].t > st[k].t);
            }
        }
    }

    #[test]
    fn twospin_examples() {
        let s1 = twospin_path_state(&qi(2), &qi(1), &qi(1), 1, false);
        assert_eq!((s1.m_plus, s1.m_minus, s1.r), (qi(1), qi(0), qi(1)));
        assert_eq!(twospin_path_state(&qi(2), &qi(1), &qi(1), 2, false).r, q(3, 2));
        // alpha1 = alpha2 = 1/beta rescales Ising: the ratios agree.
        let b = q(1, 3);
        let a = qi(3);
        for k in 1..6 {
            assert_eq!(
                twospin_path_state(&a, &a, &q(5, 4), k, false).r,
                ising_path_state(&b, &q(5, 4), k).r
            );
        }
        for k in 1..6 {
            let s = twospin_path_state(&qi(3), &q(1, 2), &qi(1), k, true);
            assert!(s.m_plus > s.m_minus);
        }
    }
}
