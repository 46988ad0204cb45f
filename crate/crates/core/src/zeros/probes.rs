//! Randomized probes of the multivariate statements (Newman's inequality,
//! the weighted strict Gauss-Lucas property) and the Gauss-Lucas remark.

use num::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::Float;
use serde::Serialize;

use super::roots::find_roots;
use crate::complex::Cx;
use crate::error::{Error, Result};
use crate::graphs::MultiGraph;
use crate::partition::weighted::{weighted_d_magnitude, weighted_ising_eval_exact, weighted_ising_eval_pair};
use crate::partition::{ActivityAssignment, VertexWeights};
use crate::poly::UniPoly;
use crate::rational::Q;

/// Seeded activity sampler: radii log-uniform in `[1, r_max]`, angles
/// uniform. Every fourth sample puts all activities on the unit circle, and
/// otherwise each vertex lands on the circle with probability 1/4.
#[derive(Clone, Debug)]
pub struct SamplerConfig {
    pub samples: usize,
    pub seed: u64,
    pub r_max: f64,
    pub prec: u32,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            samples: 1000,
            seed: 0,
            r_max: 4.0,
            prec: 256,
        }
    }
}

pub struct ActivitySampler {
    rng: ChaCha8Rng,
    cfg: SamplerConfig,
    drawn: usize,
}

impl ActivitySampler {
    pub fn new(cfg: SamplerConfig) -> Self {
        ActivitySampler {
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            cfg,
            drawn: 0,
        }
    }

    pub fn next(&mut self, n: usize) -> ActivityAssignment {
        let prec = self.cfg.prec;
        let boundary = self.drawn.is_multiple_of(4);
        self.drawn += 1;
        let two_pi = Float::with_val(prec, Cx::pi(prec) * 2u32);
        let ln_r = self.cfg.r_max.ln();
        let z = (0..n)
            .map(|_| {
                let t: f64 = self.rng.gen();
                let on_circle = boundary || self.rng.gen_bool(0.25);
                let r = if on_circle {
                    1.0
                } else {
                    (self.rng.gen::<f64>() * ln_r).exp()
                };
                let theta = Float::with_val(prec, &two_pi * t);
                Cx::polar(prec, &Float::with_val(prec, r), &theta)
            })
            .collect();
        ActivityAssignment { z, prec }
    }
}

/// `Re(D Z_w / Z_w) >= n/2 - slack` at complex activities.
pub fn newman_check(g: &MultiGraph, beta: &Q, z: &ActivityAssignment, w: &VertexWeights, slack: f64) -> Result<bool> {
    let (zz, dz) = weighted_ising_eval_pair(g, beta, z, w)?;
    if zz.is_zero() {
        return Err(Error::Precondition("Z_w vanishes at the given activities".into()));
    }
    let re = dz.div(&zz).re;
    let bound = Float::with_val(z.prec, g.n()) / 2u32 - Float::with_val(z.prec, slack);
    Ok(re >= bound)
}

/// Exact version for rational activities (the Griffiths case).
pub fn newman_check_exact(g: &MultiGraph, beta: &Q, z: &[Q], w: &VertexWeights) -> Result<bool> {
    let (zz, dz) = weighted_ising_eval_exact(g, beta, z, w)?;
    if zz.is_zero() {
        return Err(Error::Precondition("Z_w vanishes at the given activities".into()));
    }
    Ok(dz / zz >= Q::new(g.n().into(), 2.into()))
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub samples: usize,
    /// Smallest `|D Z_w|` relative to `sum |terms|`.
    pub min_relative_modulus: f64,
    /// Smallest `Re(D Z_w / Z_w) - n/2`.
    pub min_newman_margin: f64,
    /// Indices of samples where `D Z_w` fell below the numeric floor.
    pub d_zero_hits: Vec<usize>,
    pub newman_violations: Vec<usize>,
}

impl ProbeReport {
    pub fn clean(&self) -> bool {
        self.d_zero_hits.is_empty() && self.newman_violations.is_empty()
    }
}

/// Samples activities with `|z_v| >= 1` and checks `D Z_w != 0` (modulus
/// above `2^(-prec/2)` times the sum of term moduli) and Newman's inequality
/// with slack `newman_slack`.
pub fn wsglp_probe(
    g: &MultiGraph,
    beta: &Q,
    w: &VertexWeights,
    cfg: &SamplerConfig,
    newman_slack: f64,
) -> Result<ProbeReport> {
    if !g.is_connected() {
        return Err(Error::Precondition("the probe needs a connected graph".into()));
    }
    if !beta.is_positive() || *beta >= Q::one() {
        return Err(Error::InvalidInput("the probe needs 0 < beta < 1".into()));
    }
    w.check_legal(g)?;
    let mut sampler = ActivitySampler::new(cfg.clone());
    let prec = cfg.prec;
    let floor_scale = Float::with_val(prec, Float::i_exp(1, -(prec as i32 / 2)));
    let half_n = Float::with_val(prec, g.n()) / 2u32;
    let mut report = ProbeReport {
        samples: cfg.samples,
        min_relative_modulus: f64::INFINITY,
        min_newman_margin: f64::INFINITY,
        d_zero_hits: vec![],
        newman_violations: vec![],
    };
    for i in 0..cfg.samples {
        let z = sampler.next(g.n());
        let (zz, dz) = weighted_ising_eval_pair(g, beta, &z, w)?;
        let mag = weighted_d_magnitude(g, beta, &z, w)?;
        let modulus = dz.abs();
        let rel = Float::with_val(prec, &modulus / &mag);
        report.min_relative_modulus = report.min_relative_modulus.min(rel.to_f64());
        if modulus <= Float::with_val(prec, &floor_scale * &mag) {
            report.d_zero_hits.push(i);
        }
        if zz.is_zero() {
            continue;
        }
        let margin = Float::with_val(prec, &dz.div(&zz).re - &half_n);
        report.min_newman_margin = report.min_newman_margin.min(margin.to_f64());
        if margin < -newman_slack {
            report.newman_violations.push(i);
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct GaussLucasReport {
    /// Roots of `DZ` itself (including the forced root at 0) against the
    /// hull of the roots of `Z`.
    pub plain_reading: bool,
    /// Roots of `DZ / lambda = dZ/dlambda` against the same hull; this is the
    /// classical Gauss-Lucas statement and always holds.
    pub derivative_reading: bool,
    /// Raised when the two readings disagree.
    pub advisory: bool,
}

fn cross(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn hull(mut pts: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<(f64, f64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(f64, f64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn segment_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 {
        0.0
    } else {
        (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0)
    };
    ((p.0 - a.0 - t * dx).powi(2) + (p.1 - a.1 - t * dy).powi(2)).sqrt()
}

fn within_hull(p: (f64, f64), h: &[(f64, f64)], tol: f64) -> bool {
    match h.len() {
        0 => false,
        1 => segment_distance(p, h[0], h[0]) <= tol,
        2 => segment_distance(p, h[0], h[1]) <= tol,
        m => {
            let inside = (0..m).all(|i| cross(h[i], h[(i + 1) % m], p) >= 0.0);
            inside || (0..m).any(|i| segment_distance(p, h[i], h[(i + 1) % m]) <= tol)
        }
    }
}

fn roots_f64(p: &UniPoly, prec: u32) -> Result<Vec<(f64, f64)>> {
    if p.degree().unwrap_or(0) == 0 {
        return Ok(vec![]);
    }
    Ok(find_roots(p, prec)?.roots.iter().map(|r| r.z.to_f64()).collect())
}

/// Checks whether the roots of `dz_poly` lie within `tol` of the convex hull
/// of the roots of `z_poly`, under both readings of the derivative. The
/// boolean result of the remark is the derivative reading.
pub fn gauss_lucas_check(z_poly: &UniPoly, dz_poly: &UniPoly, tol: f64) -> Result<GaussLucasReport> {
    if z_poly.is_zero() || dz_poly.is_zero() {
        return Err(Error::InvalidInput("both polynomials must be nonzero".into()));
    }
    let prec = 256;
    let h = hull(roots_f64(z_poly, prec)?);
    let plain = roots_f64(dz_poly, prec)?.into_iter().all(|p| within_hull(p, &h, tol));
    let stripped = if dz_poly.coeff(0).is_zero() {
        dz_poly.div_exact(&UniPoly::x())?
    } else {
        dz_poly.clone()
    };
    let deriv = roots_f64(&stripped, prec)?.into_iter().all(|p| within_hull(p, &h, tol));
    Ok(GaussLucasReport {
        plain_reading: plain,
        derivative_reading: deriv,
        advisory: plain != deriv,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qi};

    #[test]
    fn newman_examples() {
        let e = MultiGraph::path(2).unwrap();
        let w = VertexWeights::unit(2);
        assert!(newman_check_exact(&e, &q(1, 2), &[qi(2), qi(2)], &w).unwrap());
        // Boundary case z = 1: equality n/2.
        let (zz, dz) = weighted_ising_eval_exact(&e, &q(1, 2), &[qi(1), qi(1)], &w).unwrap();
        assert_eq!(dz / zz, qi(1));
        let prec = 256;
        for k in 0..24 {
            let theta = Float::with_val(prec, k as f64 * 0.26);
            let c = Cx::polar(prec, &Float::with_val(prec, 1), &theta);
            let a = ActivityAssignment {
                z: vec![c.clone(), c],
                prec,
            };
            assert!(newman_check(&e, &q(1, 2), &a, &w, 1e-30).unwrap());
        }
    }

    #[test]
    fn probe_on_k4() {
        let g = MultiGraph::complete(4).unwrap();
        let cfg = SamplerConfig {
            samples: 200,
            seed: 7,
            ..SamplerConfig::default()
        };
        let r = wsglp_probe(&g, &q(1, 2), &VertexWeights::degrees(&g), &cfg, 1e-30).unwrap();
        assert!(r.clean(), "{r:?}");
        assert!(r.min_relative_modulus > 0.0);
    }

    #[test]
    fn sampler_is_reproducible_and_outside_the_disk() {
        let cfg = SamplerConfig {
            samples: 10,
            seed: 3,
            ..SamplerConfig::default()
        };
        let mut a = ActivitySampler::new(cfg.clone());
        let mut b = ActivitySampler::new(cfg);
        for _ in 0..10 {
            let (x, y) = (a.next(3), b.next(3));
            for (u, v) in x.z.iter().zip(&y.z) {
                assert_eq!(u, v);
                assert!(u.abs().to_f64() >= 1.0 - 1e-12);
            }
        }
    }

    #[test]
    fn gauss_lucas_readings() {
        let r = gauss_lucas_check(&UniPoly::from_ints(&[1, 1, 1]), &UniPoly::from_ints(&[0, 1, 2]), 1e-9).unwrap();
        assert!(r.derivative_reading);
        assert!(!r.plain_reading && r.advisory);
        let r = gauss_lucas_check(&UniPoly::from_ints(&[-1, 1]), &UniPoly::from_ints(&[0, 1]), 1e-9).unwrap();
        assert!(!r.plain_reading && r.derivative_reading);
        let r = gauss_lucas_check(&UniPoly::from_ints(&[1, 2, 1]), &UniPoly::from_ints(&[0, 2, 2]), 1e-9).unwrap();
        assert!(!r.plain_reading && r.derivative_reading);
    }
}
