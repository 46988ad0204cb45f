//! Minimal arbitrary-precision complex numbers on top of MPFR floats.
//!
//! Only the handful of operations the root finder and the activity probes
//! need are provided; every result is rounded to the precision of `self`.

use std::fmt;

use rug::float::Constant;
use rug::Float;

use crate::rational::{to_rug, Q};

pub const DEFAULT_PREC: u32 = 256;

#[derive(Clone, PartialEq)]
pub struct Cx {
    pub re: Float,
    pub im: Float,
}

impl Cx {
    pub fn zero(prec: u32) -> Self {
        Cx {
            re: Float::new(prec),
            im: Float::new(prec),
        }
    }

    pub fn one(prec: u32) -> Self {
        Cx::from_f64(prec, 1.0, 0.0)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        Cx {
            re: Float::with_val(prec, re),
            im: Float::with_val(prec, im),
        }
    }

    pub fn from_q(prec: u32, x: &Q) -> Self {
        Cx {
            re: Float::with_val(prec, to_rug(x)),
            im: Float::new(prec),
        }
    }

    pub fn from_parts(re: Float, im: Float) -> Self {
        Cx { re, im }
    }

    /// `r * exp(i theta)` with `theta` in radians.
    pub fn polar(prec: u32, r: &Float, theta: &Float) -> Self {
        let (s, c) = theta.clone().sin_cos(Float::new(prec));
        Cx {
            re: Float::with_val(prec, r * c),
            im: Float::with_val(prec, r * s),
        }
    }

    pub fn pi(prec: u32) -> Float {
        Float::with_val(prec, Constant::Pi)
    }

    pub fn add(&self, o: &Cx) -> Cx {
        let p = self.prec();
        Cx {
            re: Float::with_val(p, &self.re + &o.re),
            im: Float::with_val(p, &self.im + &o.im),
        }
    }

    pub fn sub(&self, o: &Cx) -> Cx {
        let p = self.prec();
        Cx {
            re: Float::with_val(p, &self.re - &o.re),
            im: Float::with_val(p, &self.im - &o.im),
        }
    }

    pub fn mul(&self, o: &Cx) -> Cx {
        let p = self.prec();
        let ac = Float::with_val(p, &self.re * &o.re);
        let bd = Float::with_val(p, &self.im * &o.im);
        let ad = Float::with_val(p, &self.re * &o.im);
        let bc = Float::with_val(p, &self.im * &o.re);
        Cx {
            re: ac - bd,
            im: ad + bc,
        }
    }

    pub fn scale(&self, s: &Float) -> Cx {
        let p = self.prec();
        Cx {
            re: Float::with_val(p, &self.re * s),
            im: Float::with_val(p, &self.im * s),
        }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.square_ref()) + Float::with_val(p, self.im.square_ref())
    }

    pub fn abs(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, self.re.hypot_ref(&self.im))
    }

    pub fn conj(&self) -> Cx {
        Cx {
            re: self.re.clone(),
            im: Float::with_val(self.prec(), -&self.im),
        }
    }

    pub fn recip(&self) -> Cx {
        let n = self.norm_sqr();
        let c = self.conj();
        Cx {
            re: c.re / &n,
            im: c.im / &n,
        }
    }

    pub fn div(&self, o: &Cx) -> Cx {
        self.mul(&o.recip())
    }

    pub fn powu(&self, mut e: u32) -> Cx {
        let mut base = self.clone();
        let mut acc = Cx::one(self.prec());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Debug for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.to_f64();
        write!(f, "({a:e} {b:+e}i)")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn field_operations() {
        let p = 128;
        let a = Cx::from_f64(p, 1.0, 2.0);
        let b = Cx::from_f64(p, -3.0, 0.5);
        let prod = a.mul(&b);
        assert_eq!(prod.to_f64(), (-4.0, -5.5));
        let back = prod.div(&b);
        assert!(back.sub(&a).abs() < 1e-35);
        assert_eq!(a.powu(2).to_f64(), (-3.0, 4.0));
        assert_eq!(Cx::from_f64(p, 3.0, 4.0).abs(), 5.0);
    }

    #[test]
    fn rational_conversion_is_correctly_rounded() {
        let x = Cx::from_q(256, &q(1, 3));
        let three = Float::with_val(256, 3);
        let err = Float::with_val(256, &x.re * &three) - 1u32;
        assert!(err.abs() < Float::with_val(256, 1e-70));
    }
}
