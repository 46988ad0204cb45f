//! Sturm sequences over Q: exact count of distinct real roots.

use num::{BigInt, Signed, Zero};

use crate::poly::UniPoly;
use crate::rational::{lcm_of_denominators, sign, Q};

/// Rescales by a positive constant to integer coefficients with unit
/// content; signs (all that Sturm's theorem needs) are preserved.
fn positive_normalize(p: &UniPoly) -> UniPoly {
    if p.is_zero() {
        return p.clone();
    }
    let l = lcm_of_denominators(p.coeffs());
    let ints: Vec<BigInt> = p
        .coeffs()
        .iter()
        .map(|c| (c * Q::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |g, c| num::Integer::gcd(&g, c)).abs();
    UniPoly::from_integers(&ints.iter().map(|c| c / &g).collect::<Vec<_>>())
}

pub fn sturm_sequence(p: &UniPoly) -> Vec<UniPoly> {
    let mut seq = vec![positive_normalize(p), positive_normalize(&p.derivative())];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            return seq;
        }
        let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
        seq.push(positive_normalize(&r.scale(&Q::from_integer((-1).into()))));
    }
}

fn sign_changes(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut changes = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// Number of distinct real roots of `p` (nonzero, degree >= 0).
pub fn count_distinct_real_roots(p: &UniPoly) -> usize {
    if p.degree().unwrap_or(0) == 0 {
        return 0;
    }
    let seq = sturm_sequence(p);
    let at_pos = seq.iter().map(|f| sign(&f.leading()));
    let at_neg = seq.iter().map(|f| {
        let s = sign(&f.leading());
        if f.degree().unwrap() % 2 == 1 {
            -s
        } else {
            s
        }
    });
    sign_changes(at_neg) - sign_changes(at_pos)
}

/// True iff every complex root of `p` is real.
pub fn is_real_rooted(p: &UniPoly) -> bool {
    let sf = p.squarefree_part();
    count_distinct_real_roots(&sf) == sf.degree().unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(count_distinct_real_roots(&UniPoly::from_ints(&[0, -2, 0, 1])), 3);
        assert_eq!(count_distinct_real_roots(&UniPoly::from_ints(&[1, 0, 1])), 0);
        assert_eq!(count_distinct_real_roots(&UniPoly::from_ints(&[-3, 0, 1])), 2);
        // (x-1)^2 (x+2): two distinct real roots.
        let p = &UniPoly::from_ints(&[1, -2, 1]) * &UniPoly::from_ints(&[2, 1]);
        assert_eq!(count_distinct_real_roots(&p), 2);
        assert!(is_real_rooted(&p));
        assert!(!is_real_rooted(&UniPoly::from_ints(&[1, 1, 1])));
    }
}
