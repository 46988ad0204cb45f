//! Polynomial arithmetic over `Z/p` for cheap coprimality certificates.
//!
//! If `p` does not divide the leading coefficients, `deg gcd(f mod p, g mod p)
//! >= deg gcd(f, g)`, so a constant gcd modulo `p` proves coprimality over Q.

use num::{BigInt, Integer, ToPrimitive, Zero};

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// The `count` largest primes below `2^62`.
pub fn large_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut c = (1u64 << 62) - 1;
    while out.len() < count {
        if is_prime_u64(c) {
            out.push(c);
        }
        c -= 2;
    }
    out
}

pub fn reduce(cs: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let mut v: Vec<u64> = cs
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits"))
        .collect();
    trim(&mut v);
    v
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    while r.len() > db {
        let top = r.len() - 1;
        let c = mul_mod(r[top], inv, p);
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                let i = top - db + j;
                r[i] = (r[i] + p - mul_mod(c, bj, p)) % p;
            }
        }
        r.pop();
        trim(&mut r);
    }
    r
}

/// Degree of `gcd(a, b)` over `Z/p`; `None` if both are zero.
pub fn gcd_degree(a: &[u64], b: &[u64], p: u64) -> Option<usize> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    (!a.is_empty()).then(|| a.len() - 1)
}

pub fn derivative(a: &[u64], p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| mul_mod(c, i as u64 % p, p))
        .collect();
    trim(&mut v);
    v
}

/// Tries to prove `gcd(f, g) = 1` over Q from integer coefficient vectors.
/// `true` is a proof; `false` means "not proven" (the caller falls back to
/// exact rational arithmetic).
pub fn certify_coprime(f: &[BigInt], g: &[BigInt], attempts: usize) -> bool {
    let (Some(lf), Some(lg)) = (f.last(), g.last()) else {
        return false;
    };
    for p in large_primes(attempts) {
        let pb = BigInt::from(p);
        if (lf % &pb).is_zero() || (lg % &pb).is_zero() {
            continue;
        }
        if gcd_degree(&reduce(f, p), &reduce(g, p), p) == Some(0) {
            return true;
        }
    }
    false
}

/// Proof that `f` is squarefree (coprime to its derivative).
pub fn certify_squarefree(f: &[BigInt], attempts: usize) -> bool {
    let Some(lf) = f.last() else {
        return false;
    };
    let n = f.len() - 1;
    if n == 0 {
        return true;
    }
    for p in large_primes(attempts) {
        let pb = BigInt::from(p);
        if (lf % &pb).is_zero() || (BigInt::from(n) % &pb).is_zero() {
            continue;
        }
        let fp = reduce(f, p);
        if gcd_degree(&fp, &derivative(&fp, p), p) == Some(0) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn primes() {
        assert!(is_prime_u64((1 << 61) - 1));
        assert!(!is_prime_u64(561));
        assert!(large_primes(3).iter().all(|&p| p < 1 << 62 && is_prime_u64(p)));
    }

    #[test]
    fn coprime_and_squarefree() {
        // (x+1)(x+2) vs (x+3)
        assert!(certify_coprime(&big(&[2, 3, 1]), &big(&[3, 1]), 3));
        assert!(!certify_coprime(&big(&[2, 3, 1]), &big(&[1, 1]), 3));
        assert!(certify_squarefree(&big(&[0, 2, 0, 1]), 3));
        assert!(!certify_squarefree(&big(&[1, 0, 2, 0, 1]), 3));
    }
}
