//! Fraction-free (Bareiss) elimination over the integers. The arithmetic
//! runs on GMP integers; the interface stays on `num` types.

use num::BigInt;
use rug::{Assign, Integer, Rational};

/// Row echelon form produced by Bareiss elimination.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
}

fn to_gmp(x: &BigInt) -> Integer {
    Integer::from_str_radix(&x.to_str_radix(16), 16).expect("hex round trip")
}

fn from_gmp(x: &Integer) -> BigInt {
    BigInt::parse_bytes(x.to_string_radix(16).as_bytes(), 16).expect("hex round trip")
}

/// Every intermediate entry is a minor of the input, so the divisions by the
/// previous pivot are exact.
fn echelon_gmp(mut a: Vec<Vec<Integer>>, cols: usize) -> (Vec<Vec<Integer>>, Vec<usize>) {
    let mut prev = Integer::from(1);
    let mut r = 0;
    let mut pivots = Vec::new();
    let mut t = Integer::new();
    for col in 0..cols {
        let Some(pr) = (r..a.len()).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(r, pr);
        let (top, rest) = a.split_at_mut(r + 1);
        let prow = &top[r];
        for row in rest.iter_mut() {
            let f = std::mem::take(&mut row[col]);
            for j in col + 1..cols {
                row[j] *= &prow[col];
                t.assign(&f * &prow[j]);
                row[j] -= &t;
                row[j].div_exact_mut(&prev);
            }
        }
        prev = a[r][col].clone();
        pivots.push(col);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    a.truncate(r);
    (a, pivots)
}

pub fn echelon(a: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let a = a.iter().map(|r| r.iter().map(to_gmp).collect()).collect();
    let (rows, pivots) = echelon_gmp(a, cols);
    Echelon {
        rows: rows.iter().map(|r| r.iter().map(from_gmp).collect()).collect(),
        pivots,
    }
}

/// Integer nullspace basis, one primitive vector (first nonzero entry
/// positive) per free column.
pub fn nullspace(a: Vec<Vec<BigInt>>, cols: usize) -> Vec<Vec<BigInt>> {
    let a = a.iter().map(|r| r.iter().map(to_gmp).collect()).collect();
    let (rows, pivots) = echelon_gmp(a, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut out = Vec::with_capacity(free.len());
    for &f in &free {
        let mut x = vec![Rational::new(); cols];
        x[f] = Rational::from(1);
        for (i, &pc) in pivots.iter().enumerate().rev() {
            let mut s = Rational::new();
            for j in pc + 1..cols {
                if x[j] != 0 && rows[i][j] != 0 {
                    s += Rational::from(&x[j] * &rows[i][j]);
                }
            }
            x[pc] = -s / &rows[i][pc];
        }
        let l = x.iter().fold(Integer::from(1), |l, c| l.lcm(c.denom()));
        let mut ints: Vec<Integer> = x.into_iter().map(|c| (c * &l).into_numer_denom().0).collect();
        let g = ints.iter().fold(Integer::new(), |g, c| g.gcd(c));
        let negative = ints.iter().find(|c| **c != 0).is_some_and(|c| *c < 0);
        if g != 0 {
            let g = if negative { -g } else { g };
            for c in &mut ints {
                c.div_exact_mut(&g);
            }
        }
        out.push(ints.iter().map(from_gmp).collect());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::Zero;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&c| BigInt::from(c)).collect())
            .collect()
    }

    #[test]
    fn rank_and_nullspace() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let e = echelon(a.clone(), 3);
        assert_eq!(e.pivots, vec![0, 1]);
        let ns = nullspace(a.clone(), 3);
        assert_eq!(ns.len(), 1);
        for row in &a {
            let dot: BigInt = row.iter().zip(&ns[0]).map(|(x, y)| x * y).sum();
            assert!(dot.is_zero());
        }
        assert_eq!(ns[0], vec![BigInt::from(1), BigInt::from(1), BigInt::from(-1)]);
    }

    #[test]
    fn full_rank_square() {
        let a = m(&[&[2, 1], &[1, 3]]);
        assert!(nullspace(a, 2).is_empty());
    }
}
