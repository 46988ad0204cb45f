//! Simultaneous root finding (Aberth-Ehrlich) on the squarefree factors of a
//! rational polynomial, with a posteriori inclusion discs.

use std::fmt::Write as _;

use num::{Signed, Zero};
use rug::Float;

use crate::complex::Cx;
use crate::error::{Error, Result};
use crate::poly::UniPoly;
use crate::rational::{to_f64, to_rug, Q};

pub const MAX_ITERATIONS: usize = 2000;

#[derive(Clone, Debug)]
pub struct RootApprox {
    pub z: Cx,
    /// A disc of this radius around `z` contains a true root (of the
    /// multiplicity below).
    pub radius: Float,
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct RootSet {
    pub roots: Vec<RootApprox>,
    pub method: &'static str,
    pub prec: u32,
}

impl RootSet {
    /// Number of roots counted with multiplicity.
    pub fn count(&self) -> usize {
        self.roots.iter().map(|r| r.multiplicity).sum()
    }

    /// `re,im,radius,multiplicity` lines with a header, for plotting.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("re,im,radius,multiplicity\n");
        for r in &self.roots {
            let (re, im) = r.z.to_f64();
            let _ = writeln!(s, "{re:e},{im:e},{:e},{}", r.radius.to_f64(), r.multiplicity);
        }
        s
    }

    pub fn max_modulus(&self) -> f64 {
        self.roots.iter().map(|r| r.z.abs().to_f64()).fold(0.0, f64::max)
    }
}

fn horner(coeffs: &[Cx], z: &Cx) -> (Cx, Cx) {
    let prec = z.prec();
    let mut p = Cx::zero(prec);
    let mut dp = Cx::zero(prec);
    for c in coeffs.iter().rev() {
        dp = dp.mul(z).add(&p);
        p = p.mul(z).add(c);
    }
    (p, dp)
}

fn abs_horner(abs_coeffs: &[Float], r: &Float) -> Float {
    let mut acc = Float::new(r.prec());
    for c in abs_coeffs.iter().rev() {
        acc = Float::with_val(r.prec(), &acc * r) + c;
    }
    acc
}

/// Upper bound on the root moduli (Fujiwara), as an `f64`.
fn fujiwara_bound(f: &UniPoly) -> f64 {
    let m = f.degree().unwrap();
    let lead = to_f64(&f.leading().abs());
    let mut best: f64 = 0.0;
    for k in 1..=m {
        let c = to_f64(&f.coeff(m - k).abs()) / lead;
        let c = if k == m { c / 2.0 } else { c };
        best = best.max(c.powf(1.0 / k as f64));
    }
    (2.0 * best).clamp(1e-6, 1e300)
}

/// Roots of a squarefree polynomial of degree >= 2, each with a Weierstrass
/// (Braess-Hadeler) inclusion radius.
fn aberth_squarefree(f: &UniPoly, prec: u32) -> Result<Vec<(Cx, Float)>> {
    let m = f.degree().unwrap();
    let coeffs: Vec<Cx> = f.coeffs().iter().map(|c| Cx::from_q(prec, c)).collect();
    let bound = fujiwara_bound(f);
    let two_pi = Float::with_val(prec, Cx::pi(prec) * 2u32);
    let r0 = Float::with_val(prec, bound);
    let mut z: Vec<Cx> = (0..m)
        .map(|k| {
            let theta = Float::with_val(prec, &two_pi * k as u32) / m as u32 + 0.4f64;
            Cx::polar(prec, &r0, &theta)
        })
        .collect();
    let eps = Float::with_val(prec, Float::i_exp(1, -(prec as i32 - 16)));
    // Backward-error stop: |f(z)| below the Horner rounding bound.
    let abs_coeffs: Vec<Float> = coeffs.iter().map(|c| c.abs()).collect();
    let noise = Float::with_val(prec, Float::i_exp(1, -(prec as i32 - 4))) * (4 * m) as u32;
    let mut converged = vec![false; m];
    let mut iters = 0;
    while converged.iter().any(|c| !c) {
        iters += 1;
        if iters > MAX_ITERATIONS {
            return Err(Error::NonConvergence {
                iterations: MAX_ITERATIONS,
            });
        }
        for i in 0..m {
            if converged[i] {
                continue;
            }
            let (p, dp) = horner(&coeffs, &z[i]);
            if p.is_zero() || p.abs() <= Float::with_val(prec, &noise * abs_horner(&abs_coeffs, &z[i].abs())) {
                converged[i] = true;
                continue;
            }
            let w = p.div(&dp);
            let mut s = Cx::zero(prec);
            for j in 0..m {
                if j != i {
                    s = s.add(&z[i].sub(&z[j]).recip());
                }
            }
            let denom = Cx::one(prec).sub(&w.mul(&s));
            let step = w.div(&denom);
            if !step.re.is_finite() || !step.im.is_finite() {
                // Coincident iterates: nudge and retry.
                z[i] = z[i].add(&Cx::from_f64(prec, 1e-3, 1e-3));
                continue;
            }
            z[i] = z[i].sub(&step);
            let scale = z[i].abs().max(&Float::with_val(prec, 1));
            if step.abs() <= Float::with_val(prec, &eps * &scale) {
                converged[i] = true;
            }
        }
    }
    // Inclusion radii r_i = m |f(z_i)| / |a_m prod_{j != i} (z_i - z_j)|.
    let lead = Float::with_val(prec, to_rug(&f.leading())).abs();
    let floor = Float::with_val(prec, Float::i_exp(1, -(prec as i32 - 8)));
    let mut out = Vec::with_capacity(m);
    for i in 0..m {
        let (p, _) = horner(&coeffs, &z[i]);
        let mut prod = Cx::one(prec);
        for j in 0..m {
            if j != i {
                prod = prod.mul(&z[i].sub(&z[j]));
            }
        }
        let denom = Float::with_val(prec, prod.abs() * &lead);
        let r = Float::with_val(prec, p.abs() * m as u32) / denom;
        let scale = z[i].abs().max(&Float::with_val(prec, 1));
        let r = r.max(&Float::with_val(prec, &floor * &scale));
        out.push((z[i].clone(), r));
    }
    merge_overlapping(&mut out);
    Ok(out)
}

/// Discs that overlap share their roots; widen every disc of a connected
/// component so that it covers the whole component.
fn merge_overlapping(discs: &mut [(Cx, Float)]) {
    let m = discs.len();
    let mut comp: Vec<usize> = (0..m).collect();
    fn find(c: &mut [usize], x: usize) -> usize {
        if c[x] != x {
            let r = find(c, c[x]);
            c[x] = r;
        }
        c[x]
    }
    for i in 0..m {
        for j in i + 1..m {
            let d = discs[i].0.sub(&discs[j].0).abs();
            let rr = Float::with_val(d.prec(), &discs[i].1 + &discs[j].1);
            if d <= rr {
                let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                comp[a] = b;
            }
        }
    }
    let roots: Vec<usize> = (0..m).map(|i| find(&mut comp, i)).collect();
    for c in 0..m {
        let members: Vec<usize> = (0..m).filter(|&i| roots[i] == c).collect();
        if members.len() < 2 {
            continue;
        }
        let prec = discs[members[0]].1.prec();
        let mut diameter = Float::new(prec);
        for &i in &members {
            diameter += Float::with_val(prec, &discs[i].1 * 2u32);
        }
        for &i in &members {
            discs[i].1 = diameter.clone();
        }
    }
}

/// All complex roots of `p` with multiplicities, at `prec` bits.
/// Deterministic: no random initialization.
pub fn find_roots(p: &UniPoly, prec: u32) -> Result<RootSet> {
    let deg = p.degree().unwrap_or(0);
    if deg == 0 {
        return Err(Error::InvalidInput("root finding needs degree >= 1".into()));
    }
    let mut roots = Vec::new();
    let (k, rest) = p.split_x_power();
    if k > 0 {
        roots.push(RootApprox {
            z: Cx::zero(prec),
            radius: Float::new(prec),
            multiplicity: k,
        });
    }
    for (factor, mult) in rest.squarefree_decomposition() {
        match factor.degree().unwrap() {
            1 => {
                let r = -factor.coeff(0) / factor.coeff(1);
                roots.push(RootApprox {
                    z: Cx::from_q(prec, &r),
                    radius: Float::new(prec),
                    multiplicity: mult,
                });
            }
            _ => {
                for (z, radius) in aberth_squarefree(&factor, prec)? {
                    roots.push(RootApprox {
                        z,
                        radius,
                        multiplicity: mult,
                    });
                }
            }
        }
    }
    debug_assert_eq!(roots.iter().map(|r| r.multiplicity).sum::<usize>(), deg);
    Ok(RootSet {
        roots,
        method: "aberth-ehrlich",
        prec,
    })
}

/// Exact rational roots are reported with radius zero; `Q` helper for tests.
pub fn is_exact_root(p: &UniPoly, x: &Q) -> bool {
    p.eval(x).is_zero()
}
