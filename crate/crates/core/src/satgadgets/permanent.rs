//! Total cycle-cover weight, i.e. the permanent of the weighted adjacency
//! matrix (self-loops on the diagonal).

use std::collections::HashMap;

use num::{BigInt, One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graphs::DirectedWeightedGraph;

/// Ryser is `O(n 2^n)`; above this many vertices only the sparse method runs.
pub const RYSER_CAP: usize = 28;
/// Largest frontier the sparse method keeps before giving up.
pub const FRONTIER_STATE_CAP: usize = 1 << 22;

/// Gray-code blocks handed to the thread pool.
const BLOCK_BITS: u32 = 14;

/// Permanent of a square integer matrix by Ryser's formula with Gray-code
/// column updates. Products are `i128` when the row-sum bound allows it.
pub fn ryser(m: &[Vec<i64>]) -> Result<BigInt> {
    let n = m.len();
    if n == 0 {
        return Ok(BigInt::one());
    }
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput("permanent of a non-square matrix".into()));
    }
    if n > RYSER_CAP {
        return Err(Error::CapExceeded {
            what: "Ryser permanent size",
            limit: RYSER_CAP,
            actual: n,
        });
    }
    // Bound on |prod_i r_i(S)| in bits.
    let bits: f64 = m
        .iter()
        .map(|r| (r.iter().map(|x| x.unsigned_abs() as f64).sum::<f64>()).max(1.0).log2())
        .sum();
    let small = bits < 120.0;
    let total: u64 = 1 << n;
    let block = 1u64 << BLOCK_BITS.min(n as u32);
    let starts: Vec<u64> = (0..total).step_by(block as usize).collect();
    let partial: Vec<BigInt> = starts
        .into_par_iter()
        .map(|k0| ryser_block(m, k0, (k0 + block).min(total), small))
        .collect();
    let sum: BigInt = partial.into_iter().sum();
    Ok(if n % 2 == 1 { -sum } else { sum })
}

/// `sum_{k0 <= k < k1, k > 0} (-1)^|g_k| prod_i r_i(g_k)` with `g_k` the k-th
/// Gray code.
fn ryser_block(m: &[Vec<i64>], k0: u64, k1: u64, small: bool) -> BigInt {
    let n = m.len();
    let mut big = BigInt::zero();
    let mut acc: i128 = 0;
    let mut g = k0 ^ (k0 >> 1);
    let mut row: Vec<i64> = (0..n)
        .map(|i| (0..n).filter(|&j| g >> j & 1 == 1).map(|j| m[i][j]).sum())
        .collect();
    for k in k0..k1 {
        if k > k0 {
            let j = k.trailing_zeros() as usize;
            g ^= 1 << j;
            if g >> j & 1 == 1 {
                row.iter_mut().zip(m).for_each(|(r, mi)| *r += mi[j]);
            } else {
                row.iter_mut().zip(m).for_each(|(r, mi)| *r -= mi[j]);
            }
        }
        if k == 0 || row.contains(&0) {
            continue;
        }
        let odd = g.count_ones() % 2 == 1;
        if small {
            let mut p: i128 = 1;
            for &r in &row {
                p *= r as i128;
            }
            let p = if odd { -p } else { p };
            acc = match acc.checked_add(p) {
                Some(s) => s,
                None => {
                    big += BigInt::from(acc);
                    p
                }
            };
        } else {
            let p: BigInt = row.iter().map(|&r| BigInt::from(r)).product();
            if odd {
                big -= p;
            } else {
                big += p;
            }
        }
    }
    big + BigInt::from(acc)
}

/// Permanent by dynamic programming over the set of columns used so far,
/// processing rows in a greedy order that keeps the open frontier small.
/// Exact for any size as long as the frontier stays under `state_cap`.
pub fn frontier_permanent(m: &[Vec<i64>], state_cap: usize) -> Result<BigInt> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput("permanent of a non-square matrix".into()));
    }
    let rows: Vec<Vec<(usize, i64)>> = m
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, &w)| w != 0)
                .map(|(j, &w)| (j, w))
                .collect()
        })
        .collect();
    let mut col_rows: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, r) in rows.iter().enumerate() {
        for &(j, _) in r {
            col_rows[j].push(i);
        }
    }
    if col_rows.iter().any(|c| c.is_empty()) || rows.iter().any(|r| r.is_empty()) {
        return Ok(BigInt::zero());
    }
    let order = greedy_row_order(&rows, &col_rows);
    let words = n.div_ceil(64);
    let mut remaining: Vec<usize> = col_rows.iter().map(Vec::len).collect();
    let mut states: HashMap<Vec<u64>, BigInt> = HashMap::new();
    states.insert(vec![0; words], BigInt::one());
    for &i in &order {
        for &(j, _) in &rows[i] {
            remaining[j] -= 1;
        }
        // Columns that no later row can reach must be used by now.
        let closing: Vec<usize> = rows[i].iter().map(|&(j, _)| j).filter(|&j| remaining[j] == 0).collect();
        let mut next: HashMap<Vec<u64>, BigInt> = HashMap::with_capacity(states.len() * 2);
        for (key, val) in &states {
            for &(j, w) in &rows[i] {
                if key[j / 64] >> (j % 64) & 1 == 1 {
                    continue;
                }
                let mut k2 = key.clone();
                k2[j / 64] |= 1 << (j % 64);
                if closing.iter().any(|&c| k2[c / 64] >> (c % 64) & 1 == 0) {
                    continue;
                }
                *next.entry(k2).or_insert_with(BigInt::zero) += val * BigInt::from(w);
            }
        }
        next.retain(|_, v| !v.is_zero());
        if next.len() > state_cap {
            return Err(Error::CapExceeded {
                what: "permanent frontier states",
                limit: state_cap,
                actual: next.len(),
            });
        }
        states = next;
        if states.is_empty() {
            return Ok(BigInt::zero());
        }
    }
    Ok(states.into_values().sum())
}

fn greedy_row_order(rows: &[Vec<(usize, i64)>], col_rows: &[Vec<usize>]) -> Vec<usize> {
    let n = rows.len();
    let mut done = vec![false; n];
    let mut remaining: Vec<usize> = col_rows.iter().map(Vec::len).collect();
    let mut open = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        // Prefer rows that close many columns and open few.
        let best = (0..n)
            .filter(|&i| !done[i])
            .min_by_key(|&i| {
                let opened = rows[i].iter().filter(|&&(j, _)| !open[j] && remaining[j] > 1).count() as i64;
                let closed = rows[i].iter().filter(|&&(j, _)| remaining[j] == 1).count() as i64;
                (opened - closed, i)
            })
            .unwrap();
        done[best] = true;
        order.push(best);
        for &(j, _) in &rows[best] {
            remaining[j] -= 1;
            open[j] = remaining[j] > 0;
        }
    }
    order
}

/// Up to this size Ryser is cheap enough to be the default.
pub const DENSE_THRESHOLD: usize = 20;

/// Total weight of the cycle covers of `d`: Ryser for small graphs, the
/// frontier method for the larger (and always sparse) compiler outputs.
pub fn cycle_cover_weight(d: &DirectedWeightedGraph) -> Result<BigInt> {
    let m = d.matrix();
    if d.n() <= DENSE_THRESHOLD {
        ryser(&m)
    } else {
        frontier_permanent(&m, FRONTIER_STATE_CAP)
    }
}

/// Permanent of the minor that deletes `rows` and `cols` (equal counts).
pub fn minor_permanent(m: &[Vec<i64>], rows: &[usize], cols: &[usize]) -> Result<BigInt> {
    if rows.len() != cols.len() {
        return Ok(BigInt::zero());
    }
    let keep_r: Vec<usize> = (0..m.len()).filter(|i| !rows.contains(i)).collect();
    let keep_c: Vec<usize> = (0..m.len()).filter(|j| !cols.contains(j)).collect();
    let sub: Vec<Vec<i64>> = keep_r
        .iter()
        .map(|&i| keep_c.iter().map(|&j| m[i][j]).collect())
        .collect();
    if sub.len() <= DENSE_THRESHOLD {
        ryser(&sub)
    } else {
        frontier_permanent(&sub, FRONTIER_STATE_CAP)
    }
}

/// Weights of the individual nonzero cycle covers (permutation terms) of
/// the minor; for gadget-sized matrices only.
pub fn cover_terms(m: &[Vec<i64>], rows: &[usize], cols: &[usize]) -> Vec<i64> {
    if rows.len() != cols.len() {
        return Vec::new();
    }
    let keep_r: Vec<usize> = (0..m.len()).filter(|i| !rows.contains(i)).collect();
    let keep_c: Vec<usize> = (0..m.len()).filter(|j| !cols.contains(j)).collect();
    let mut out = Vec::new();
    let mut used = vec![false; keep_c.len()];
    fn go(m: &[Vec<i64>], r: &[usize], c: &[usize], depth: usize, acc: i64, used: &mut [bool], out: &mut Vec<i64>) {
        if depth == r.len() {
            out.push(acc);
            return;
        }
        for (k, &j) in c.iter().enumerate() {
            let w = m[r[depth]][j];
            if used[k] || w == 0 {
                continue;
            }
            used[k] = true;
            go(m, r, c, depth + 1, acc * w, used, out);
            used[k] = false;
        }
    }
    go(m, &keep_r, &keep_c, 0, 1, &mut used, &mut out);
    out
}
