//! Certificates for the zero-location statements.

use num::Zero;
use rug::Float;
use serde::Serialize;
use serde_json::{json, Value};

use super::modular;
use super::roots::find_roots;
use super::schur_cohn::{schur_cohn, SchurCohnWitness};
use super::sturm::is_real_rooted;
use crate::error::{Error, Result};
use crate::poly::UniPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    StrictlyInsideUnitDisk,
    AllOnUnitCircle,
    AllImaginaryAxis,
    Squarefree,
    CoprimeWithDerivative,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    SchurCohn(SchurCohnWitness),
    /// An offending root disc.
    RootDisc {
        re: f64,
        im: f64,
        radius: f64,
        deviation: f64,
    },
    /// Coefficient `k` breaks `a_k = c * a_{n-k}` for both `c = 1` and `c = -1`.
    NotSelfInversive {
        index: usize,
    },
    /// A nontrivial common factor, coefficients constant term first.
    Gcd {
        factor: Vec<String>,
    },
    /// The Sturm count of distinct real roots versus the squarefree degree.
    RealRootCount {
        distinct_real: usize,
        degree: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub property: Property,
    pub verdict: bool,
    /// `None` for exact certificates.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Certificate {
    fn exact(property: Property, witness: Option<Witness>) -> Self {
        Certificate {
            property,
            verdict: witness.is_none(),
            tolerance: None,
            witness,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.tolerance.is_none()
    }

    /// One JSON-lines record `{graph_id, property, verdict, witness?}`.
    pub fn to_json_line(&self, graph_id: &str) -> String {
        let mut v = json!({ "graph_id": graph_id, "property": self.property, "verdict": self.verdict });
        if let Some(t) = self.tolerance {
            v["tolerance"] = json!(t);
        }
        if let Some(w) = &self.witness {
            v["witness"] = serde_json::to_value(w).unwrap_or(Value::Null);
        }
        v.to_string()
    }
}

/// Exact Schur-Cohn certificate (zero roots count as inside).
pub fn certify_strictly_inside_unit_disk(p: &UniPoly) -> Result<Certificate> {
    if p.is_zero() {
        return Err(Error::InvalidInput(
            "the zero polynomial has no zero set to certify".into(),
        ));
    }
    Ok(Certificate::exact(
        Property::StrictlyInsideUnitDisk,
        schur_cohn(p).err().map(Witness::SchurCohn),
    ))
}

/// A real polynomial with all roots on the unit circle is self-inversive:
/// `a_k = c a_{n-k}` with `c = +1` or `c = -1`. Returns the first index
/// violating both.
fn self_inversive_violation(p: &UniPoly) -> Option<usize> {
    let n = p.degree().unwrap_or(0);
    let cs = p.coeffs();
    let plus = (0..=n).find(|&k| cs[k] != cs[n - k]);
    let minus = (0..=n).find(|&k| cs[k] != -cs[n - k].clone());
    match (plus, minus) {
        (Some(a), Some(b)) => Some(a.max(b)),
        _ => None,
    }
}

/// Numeric unit-circle certificate at `prec` bits: every inclusion disc
/// meets the circle and every approximation is within `tol` of it. The exact
/// self-inversive necessary condition is checked first.
pub fn certify_unit_circle(p: &UniPoly, tol: f64, prec: u32) -> Result<Certificate> {
    if p.degree().unwrap_or(0) == 0 {
        return Err(Error::InvalidInput("unit-circle certificate needs degree >= 1".into()));
    }
    let mut cert = Certificate {
        property: Property::AllOnUnitCircle,
        verdict: true,
        tolerance: Some(tol),
        witness: None,
    };
    if let Some(index) = self_inversive_violation(p) {
        cert.verdict = false;
        cert.witness = Some(Witness::NotSelfInversive { index });
        return Ok(cert);
    }
    let roots = find_roots(p, prec)?;
    let slack = Float::with_val(prec, Float::i_exp(1, -(prec as i32 - 20)));
    let tol_f = Float::with_val(prec, tol);
    let mut worst: Option<(f64, Witness)> = None;
    for r in &roots.roots {
        let dev = Float::with_val(prec, r.z.abs() - 1u32).abs();
        let meets = dev <= Float::with_val(prec, &r.radius + &slack);
        let within = dev <= tol_f;
        if !(meets && within) {
            let (re, im) = r.z.to_f64();
            let d = dev.to_f64();
            if worst.as_ref().is_none_or(|(w, _)| d > *w) {
                worst = Some((
                    d,
                    Witness::RootDisc {
                        re,
                        im,
                        radius: r.radius.to_f64(),
                        deviation: d,
                    },
                ));
            }
        }
    }
    if let Some((_, w)) = worst {
        cert.verdict = false;
        cert.witness = Some(w);
    }
    Ok(cert)
}

fn exact_gcd_witness(f: &UniPoly, g: &UniPoly) -> Option<Witness> {
    let d = f.gcd(g);
    (!d.is_constant()).then(|| Witness::Gcd { factor: d.to_strings() })
}

/// Exact `gcd(f, g) = 1`, proven modulo a large prime when possible and by
/// rational Euclid otherwise (which also produces the witness).
pub fn coprime(f: &UniPoly, g: &UniPoly) -> Option<Witness> {
    if f.is_zero() || g.is_zero() {
        return exact_gcd_witness(f, g);
    }
    if modular::certify_coprime(&f.primitive_integer(), &g.primitive_integer(), 4) {
        return None;
    }
    exact_gcd_witness(f, g)
}

/// Squarefree certificate: `gcd(p, p') = 1`.
pub fn certify_squarefree(p: &UniPoly) -> Result<Certificate> {
    if p.is_zero() {
        return Err(Error::InvalidInput("the zero polynomial is not squarefree".into()));
    }
    let witness = if modular::certify_squarefree(&p.primitive_integer(), 4) {
        None
    } else {
        exact_gcd_witness(p, &p.derivative())
    };
    Ok(Certificate::exact(Property::Squarefree, witness))
}

/// `gcd(Z, DZ) = 1` with `D = lambda d/dlambda`.
pub fn certify_coprime_with_derivative(z: &UniPoly) -> Result<Certificate> {
    if z.is_zero() {
        return Err(Error::InvalidInput("zero polynomial".into()));
    }
    Ok(Certificate::exact(
        Property::CoprimeWithDerivative,
        coprime(z, &z.x_derivative()),
    ))
}

/// `q(y) = sum_j (-1)^j c_j y^(n-2j)` for `zm = sum_j c_j lambda^(n-2j)`, so that
/// `zm(i y) = i^n q(y)`: zeros of `zm` on the imaginary axis correspond to
/// real zeros of `q`.
pub fn imaginary_axis_transform(zm: &UniPoly) -> Result<UniPoly> {
    let n = zm
        .degree()
        .ok_or_else(|| Error::InvalidInput("zero polynomial".into()))?;
    let mut out = Vec::with_capacity(n + 1);
    for (k, c) in zm.coeffs().iter().enumerate() {
        if (n - k) % 2 == 1 {
            if !c.is_zero() {
                return Err(Error::InvalidInput(format!(
                    "matching polynomial parity violated at degree {k}"
                )));
            }
            out.push(c.clone());
        } else if ((n - k) / 2) % 2 == 1 {
            out.push(-c.clone());
        } else {
            out.push(c.clone());
        }
    }
    Ok(UniPoly::new(out))
}

/// Imaginary-axis certificate (exact, Sturm) and simplicity certificate
/// (exact gcd) for a matching polynomial.
pub fn certify_imaginary_axis_and_simple(zm: &UniPoly) -> Result<(Certificate, Certificate)> {
    let q = imaginary_axis_transform(zm)?;
    let axis = if is_real_rooted(&q) {
        None
    } else {
        let sf = q.squarefree_part();
        Some(Witness::RealRootCount {
            distinct_real: super::sturm::count_distinct_real_roots(&sf),
            degree: sf.degree().unwrap_or(0),
        })
    };
    Ok((
        Certificate::exact(Property::AllImaginaryAxis, axis),
        certify_squarefree(zm)?,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_examples() {
        assert!(
            certify_strictly_inside_unit_disk(&UniPoly::from_ints(&[0, 1, 2]))
                .unwrap()
                .verdict
        );
        let c = certify_strictly_inside_unit_disk(&UniPoly::from_ints(&[-1, 1])).unwrap();
        assert!(!c.verdict && c.is_exact() && c.witness.is_some());
    }

    #[test]
    fn circle_examples() {
        assert!(
            certify_unit_circle(&UniPoly::from_ints(&[1, 1, 1]), 1e-25, 256)
                .unwrap()
                .verdict
        );
        assert!(
            certify_unit_circle(&UniPoly::from_ints(&[1, 2, 1]), 1e-25, 256)
                .unwrap()
                .verdict
        );
        let c = certify_unit_circle(&UniPoly::from_ints(&[0, 1, 2]), 1e-25, 256).unwrap();
        assert!(!c.verdict);
        // Self-inversive but with roots off the circle: x^2 - 3x + 1.
        let c = certify_unit_circle(&UniPoly::from_ints(&[1, -3, 1]), 1e-25, 256).unwrap();
        assert!(!c.verdict);
        assert!(matches!(c.witness, Some(Witness::RootDisc { .. })));
    }

    #[test]
    fn heilmann_lieb_examples() {
        let (a, s) = certify_imaginary_axis_and_simple(&UniPoly::from_ints(&[0, 2, 0, 1])).unwrap();
        assert!(a.verdict && s.verdict);
        assert_eq!(
            imaginary_axis_transform(&UniPoly::from_ints(&[0, 2, 0, 1])).unwrap(),
            UniPoly::from_ints(&[0, -2, 0, 1])
        );
        let (a, s) = certify_imaginary_axis_and_simple(&UniPoly::from_ints(&[3, 0, 1])).unwrap();
        assert!(a.verdict && s.verdict);
        let sq = UniPoly::from_ints(&[1, 0, 1]).pow(2);
        let (a, s) = certify_imaginary_axis_and_simple(&sq).unwrap();
        assert!(a.verdict && !s.verdict);
        assert!(certify_imaginary_axis_and_simple(&UniPoly::from_ints(&[1, 1, 1])).is_err());
    }

    #[test]
    fn json_lines() {
        let c = certify_strictly_inside_unit_disk(&UniPoly::from_ints(&[-1, 1])).unwrap();
        let line = c.to_json_line("c1-0");
        let v: Value = serde_json::from_str(&line).unwrap();
        assert_eq!(v["property"], "strictly_inside_unit_disk");
        assert_eq!(v["verdict"], false);
        assert_eq!(v["witness"]["kind"], "schur_cohn");
    }

    #[test]
    fn derivative_coprimality() {
        // Two disjoint single edges: Z = (l^2 + l + 1)^2 shares a factor with DZ.
        let z = UniPoly::from_ints(&[1, 1, 1]).pow(2);
        assert!(!certify_coprime_with_derivative(&z).unwrap().verdict);
        assert!(
            certify_coprime_with_derivative(&UniPoly::from_ints(&[1, 1, 1]))
                .unwrap()
                .verdict
        );
    }
}
