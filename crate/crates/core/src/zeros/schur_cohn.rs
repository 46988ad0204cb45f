//! Exact Schur-Cohn test: are all roots strictly inside the unit disk?

use num::{BigInt, Signed, Zero};
use serde::Serialize;

use crate::poly::UniPoly;

/// Why the test failed: at reduction step `step` the polynomial had
/// `|leading| <= |constant|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SchurCohnWitness {
    pub step: usize,
    pub leading: String,
    pub constant: String,
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    let g = v.iter().fold(BigInt::zero(), |g, c| num::Integer::gcd(&g, c));
    if !g.is_zero() && g != BigInt::from(1) {
        for c in &mut v {
            *c /= &g;
        }
    }
    v
}

/// `Ok(())` iff every root of `p` has modulus `< 1`. Zero roots are factored
/// out first (they are inside). Each step replaces `f` of degree `m` by
/// `(a_m f - a_0 f*) / z`, which has degree `m - 1` and leading coefficient
/// `a_m^2 - a_0^2 > 0`, so no step can degenerate.
pub fn schur_cohn(p: &UniPoly) -> Result<(), SchurCohnWitness> {
    assert!(!p.is_zero(), "Schur-Cohn test of the zero polynomial");
    let (_, rest) = p.split_x_power();
    let mut f = primitive(rest.primitive_integer());
    let mut step = 0;
    while f.len() > 1 {
        let m = f.len() - 1;
        let (am, a0) = (f[m].clone(), f[0].clone());
        if am.abs() <= a0.abs() {
            return Err(SchurCohnWitness {
                step,
                leading: am.to_string(),
                constant: a0.to_string(),
            });
        }
        // g_k = a_m f_{k+1} - a_0 f*_{k+1}, with f*_j = f_{m-j}.
        let g: Vec<BigInt> = (0..m).map(|k| &am * &f[k + 1] - &a0 * &f[m - k - 1]).collect();
        f = primitive(g);
        step += 1;
    }
    Ok(())
}

pub fn strictly_inside_unit_disk(p: &UniPoly) -> bool {
    schur_cohn(p).is_ok()
}
