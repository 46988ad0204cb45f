//! Small helpers around `BigRational`.

use num::bigint::Sign;
use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`. Decimal notation is rejected on purpose.
pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational of the form p/q: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::InvalidInput(format!("zero denominator in {s:?}")));
    }
    Ok(Q::new(n, d))
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn pow(x: &Q, e: usize) -> Q {
    num::pow(x.clone(), e)
}

pub fn isqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn sqrt_exact(x: &Q) -> Option<Q> {
    let n = isqrt_exact(x.numer())?;
    let d = isqrt_exact(x.denom())?;
    Some(Q::new(n, d))
}

pub fn lcm_of_denominators<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        // Very large numerator/denominator: scale through the bit lengths.
        let nb = x.numer().bits() as i64;
        let db = x.denom().bits() as i64;
        let shift = nb - db;
        let scaled = if shift > 0 {
            Q::new(x.numer().clone(), x.denom() << shift as usize)
        } else {
            Q::new(x.numer() << (-shift) as usize, x.denom().clone())
        };
        scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
    })
}

pub fn sign(x: &Q) -> i32 {
    match x.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

pub fn to_rug(x: &Q) -> rug::Rational {
    let n: rug::Integer = x.numer().to_string().parse().expect("integer round trip");
    let d: rug::Integer = x.denom().to_string().parse().expect("integer round trip");
    rug::Rational::from((n, d))
}

/// `serde` helper: rationals are serialized as `"p/q"` strings.
pub fn serialize_q<S: serde::Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_q(x))
}

pub fn serialize_q_vec<S: serde::Serializer>(xs: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(xs.iter().map(fmt_q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("3/6").unwrap(), q(1, 2));
        assert_eq!(parse_q(" -4 ").unwrap(), qi(-4));
        assert!(parse_q("0.5").is_err());
        assert!(parse_q("1/0").is_err());
        assert_eq!(fmt_q(&q(-6, 4)), "-3/2");
        assert_eq!(fmt_q(&qi(7)), "7");
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(sqrt_exact(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(sqrt_exact(&q(2, 1)), None);
        assert_eq!(sqrt_exact(&q(-1, 1)), None);
    }

    #[test]
    fn f64_of_huge_rational() {
        let big = Q::new(BigInt::from(3) << 2000usize, BigInt::from(1) << 2000usize);
        assert!((to_f64(&big) - 3.0).abs() < 1e-12);
    }
}
