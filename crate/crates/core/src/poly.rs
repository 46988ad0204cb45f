//! Dense univariate polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{fmt_q, lcm_of_denominators, parse_q, Q};

/// `coeffs[k]` is the coefficient of `x^k`. The highest stored coefficient is
/// never zero; the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Q>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::new(cs.iter().map(|&c| Q::from_integer(c.into())).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    pub fn x() -> Self {
        Self::monomial(Q::one(), 1)
    }

    pub fn monomial(c: Q, k: usize) -> Self {
        let mut coeffs = vec![Q::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Q> {
        self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Q::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    /// Largest `k` with `x^k | self`, and the cofactor. The zero polynomial
    /// returns `(0, 0)`.
    pub fn split_x_power(&self) -> (usize, Self) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if self.is_zero() {
            return (0, Self::zero());
        }
        (
            k,
            UniPoly {
                coeffs: self.coeffs[k..].to_vec(),
            },
        )
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Q::from_integer(k.into()))
                .collect(),
        )
    }

    /// The operator `x d/dx`: multiplies the k-th coefficient by k.
    pub fn x_derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c * Q::from_integer(k.into()))
                .collect(),
        )
    }

    /// `x^deg p(1/x)`: the coefficient list reversed.
    pub fn reversed(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lc = self.leading();
        self.scale(&lc.recip())
    }

    /// `p(c x)`.
    pub fn dilate(&self, c: &Q) -> Self {
        let mut f = Q::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            out.push(a * &f);
            f *= c;
        }
        Self::new(out)
    }

    /// Integer polynomial with coprime coefficients and positive leading
    /// coefficient, proportional to `self`.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return vec![];
        }
        let l = lcm_of_denominators(&self.coeffs);
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| (c * Q::from_integer(l.clone())).to_integer())
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |g, c| num::Integer::gcd(&g, c));
        let s = if ints.last().unwrap().is_negative() { -g } else { g };
        for c in &mut ints {
            *c /= &s;
        }
        ints
    }

    pub fn from_integers(cs: &[BigInt]) -> Self {
        Self::new(cs.iter().map(|c| Q::from_integer(c.clone())).collect())
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let lc_inv = d.leading().recip();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![Q::zero(); r.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &r[i + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, dj) in d.coeffs.iter().enumerate() {
                    r[i + j] -= &c * dj;
                }
            }
            quot[i] = c;
        }
        r.truncate(dd);
        (Self::new(quot), Self::new(r))
    }

    /// Exact division; errors when the remainder is nonzero.
    pub fn div_exact(&self, d: &Self) -> Result<Self> {
        let (qt, r) = self.div_rem(d);
        if r.is_zero() {
            Ok(qt)
        } else {
            Err(Error::Inconsistent("polynomial division is not exact".into()))
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    /// Squarefree decomposition (Yun): returns `[(f_1, 1), (f_2, 2), ...]`
    /// with `self = c * prod f_i^i`, each `f_i` monic and squarefree, and
    /// trivial factors omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_exact(&a0).expect("gcd divides");
        let mut c = fp.div_exact(&a0).expect("gcd divides");
        let mut d = &c - &b.derivative();
        let mut i = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            if !a.is_constant() {
                out.push((a.clone(), i));
            }
            b = b.div_exact(&a).expect("gcd divides");
            c = d.div_exact(&a).expect("gcd divides");
            d = &c - &b.derivative();
            i += 1;
        }
        out
    }

    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).expect("gcd divides").monic()
    }

    /// Exact square root of a polynomial with constant term 1, if it is a
    /// perfect square of a polynomial with constant term 1.
    pub fn sqrt_exact(&self) -> Option<Self> {
        let d = self.degree()?;
        if d % 2 != 0 || self.coeff(0) != Q::one() {
            return None;
        }
        let m = d / 2;
        // Power-series square root, c_0 = 1.
        let mut s = vec![Q::one()];
        let two = Q::from_integer(2.into());
        for k in 1..=m {
            let mut acc = self.coeff(k);
            for j in 1..k {
                acc -= &s[j] * &s[k - j];
            }
            s.push(acc / &two);
        }
        let root = Self::new(s);
        (&root * &root == *self).then_some(root)
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(fmt_q).collect()
    }

    pub fn from_strings<S: AsRef<str>>(xs: &[S]) -> Result<Self> {
        Ok(Self::new(
            xs.iter().map(|s| parse_q(s.as_ref())).collect::<Result<_>>()?,
        ))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, a) = if c.is_negative() {
                (true, -c)
            } else {
                (false, c.clone())
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let show_coeff = k == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{}", fmt_q(&a))?;
            }
            match k {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{k}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        UniPoly::from_strings(&v).map_err(serde::de::Error::custom)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, o: UniPoly) -> UniPoly {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn p(cs: &[i64]) -> UniPoly {
        UniPoly::from_ints(cs)
    }

    #[test]
    fn normalization_and_degree() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0, 0]).degree(), None);
        assert!(p(&[]).is_zero());
    }

    #[test]
    fn arithmetic() {
        let a = p(&[1, 1]);
        assert_eq!(&a * &a, p(&[1, 2, 1]));
        assert_eq!(&(&a * &a) - &a, p(&[0, 1, 1]));
        assert_eq!(a.pow(3), p(&[1, 3, 3, 1]));
        assert_eq!(p(&[1, 1, 1]).x_derivative(), p(&[0, 1, 2]));
        assert_eq!(p(&[1, 1, 1]).derivative(), p(&[1, 2]));
        assert_eq!(p(&[1, 2, 3]).reversed(), p(&[3, 2, 1]));
        assert_eq!(p(&[0, 0, 3, 1]).split_x_power(), (2, p(&[3, 1])));
    }

    #[test]
    fn division_and_gcd() {
        let f = p(&[-1, 0, 1]); // (x-1)(x+1)
        let g = p(&[1, 2, 1]); // (x+1)^2
        assert_eq!(f.gcd(&g), p(&[1, 1]));
        let (qq, r) = p(&[1, 0, 0, 1]).div_rem(&p(&[1, 1]));
        assert_eq!(qq, p(&[1, -1, 1]));
        assert!(r.is_zero());
        assert!(p(&[1, 0, 1]).div_exact(&p(&[1, 1])).is_err());
    }

    #[test]
    fn squarefree_decomposition_recovers_multiplicities() {
        // (x+1)^3 (x-2)^2 x
        let f = &(&p(&[1, 1]).pow(3) * &p(&[-2, 1]).pow(2)) * &p(&[0, 1]);
        let dec = f.squarefree_decomposition();
        assert_eq!(dec, vec![(p(&[0, 1]), 1), (p(&[-2, 1]), 2), (p(&[1, 1]), 3)]);
        assert_eq!(f.squarefree_part(), p(&[0, -2, -1, 1]));
    }

    #[test]
    fn exact_sqrt() {
        let z = UniPoly::new(vec![q(1, 1), q(1, 2), q(3, 1)]);
        assert_eq!((&z * &z).sqrt_exact(), Some(z.clone()));
        assert_eq!(p(&[1, 1]).sqrt_exact(), None);
        assert_eq!(p(&[1, 3, 1]).sqrt_exact(), None);
    }

    #[test]
    fn primitive_integer_form() {
        let f = UniPoly::new(vec![q(-1, 2), q(1, 3)]);
        assert_eq!(f.primitive_integer(), vec![BigInt::from(-3), BigInt::from(2)]);
    }

    #[test]
    fn json_round_trip() {
        let f = UniPoly::new(vec![q(1, 1), q(-3, 4)]);
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"["1","-3/4"]"#);
        assert_eq!(serde_json::from_str::<UniPoly>(&s).unwrap(), f);
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, -1, 1]).to_string(), "x^2 - x + 1");
        assert_eq!(UniPoly::new(vec![q(0, 1), q(3, 4)]).to_string(), "3/4*x");
    }
}
