//! Monotone 2-CNF formulas and the shared-variable augmentation.

use std::fmt;
use std::str::FromStr;

use num::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Brute-force counting is limited to this many variables.
pub const COUNT_MAX_VARS: usize = 24;

/// `∧ (x_i ∨ x_j)` over positive literals `1..=nu`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotoneTwoCnf {
    nu: usize,
    clauses: Vec<(usize, usize)>,
}

impl MonotoneTwoCnf {
    pub fn new(nu: usize, clauses: Vec<(usize, usize)>) -> Result<Self> {
        for &(x, y) in &clauses {
            if x == 0 || y == 0 || x > nu || y > nu {
                return Err(Error::InvalidInput(format!(
                    "literal out of range in clause ({x} ∨ {y}) with {nu} variables"
                )));
            }
        }
        Ok(MonotoneTwoCnf { nu, clauses })
    }

    pub fn nu(&self) -> usize {
        self.nu
    }

    pub fn mu(&self) -> usize {
        self.clauses.len()
    }

    pub fn clauses(&self) -> &[(usize, usize)] {
        &self.clauses
    }

    /// Text form: one clause per line, two positive integers. Blank lines and
    /// lines starting with `#` or `c ` are skipped. `nu` is the largest
    /// literal unless a `p <nu>` header line says otherwise.
    pub fn parse(text: &str) -> Result<Self> {
        let mut clauses = Vec::new();
        let mut declared = None;
        for (ln, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || line == "c" || line.starts_with("c ") {
                continue;
            }
            if let Some(rest) = line.strip_prefix("p ") {
                let nu = rest
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidInput(format!("line {}: bad header {line:?}", ln + 1)))?;
                declared = Some(nu);
                continue;
            }
            let lits: Vec<usize> = line
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::InvalidInput(format!("line {}: expected two positive integers", ln + 1)))?;
            match lits.as_slice() {
                &[x, y] if x > 0 && y > 0 => clauses.push((x, y)),
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "line {}: expected two positive integers, got {line:?}",
                        ln + 1
                    )))
                }
            }
        }
        let max_lit = clauses.iter().map(|&(x, y)| x.max(y)).max().unwrap_or(0);
        let nu = declared.unwrap_or(max_lit);
        Self::new(nu, clauses)
    }

    pub fn is_satisfied_by(&self, assignment: u64) -> bool {
        self.clauses
            .iter()
            .all(|&(x, y)| assignment >> (x - 1) & 1 == 1 || assignment >> (y - 1) & 1 == 1)
    }

    /// Number of satisfying assignments, by enumeration.
    pub fn count_satisfying(&self) -> Result<BigInt> {
        if self.nu > COUNT_MAX_VARS {
            return Err(Error::CapExceeded {
                what: "variables to enumerate",
                limit: COUNT_MAX_VARS,
                actual: self.nu,
            });
        }
        Ok(BigInt::from(
            (0..1u64 << self.nu).filter(|&a| self.is_satisfied_by(a)).count(),
        ))
    }

    /// Variables that occur in some clause, ascending.
    pub fn used_variables(&self) -> Vec<usize> {
        let mut used: Vec<usize> = self.clauses.iter().flat_map(|&(x, y)| [x, y]).collect();
        used.sort_unstable();
        used.dedup();
        used
    }

    /// Drops variables that occur in no clause and renumbers the rest.
    /// Returns the reduced formula and the number of dropped variables.
    pub fn strip_unused(&self) -> (MonotoneTwoCnf, usize) {
        let used = self.used_variables();
        let relabel = |x: usize| used.binary_search(&x).unwrap() + 1;
        let clauses = self.clauses.iter().map(|&(x, y)| (relabel(x), relabel(y))).collect();
        (
            MonotoneTwoCnf {
                nu: used.len(),
                clauses,
            },
            self.nu - used.len(),
        )
    }

    /// `φ' = ∧ (τ ∨ c_i)`, with `τ` a fresh variable.
    pub fn augment_with_tau(&self) -> TauAugmented {
        TauAugmented {
            nu: self.nu,
            clauses: self
                .clauses
                .iter()
                .map(|&(x, y)| [Literal::Tau, Literal::Var(x), Literal::Var(y)])
                .collect(),
        }
    }

    /// Every monotone 2-CNF with exactly `nu` variables and `mu` clauses,
    /// clauses as unordered pairs `x <= y`, clause lists as multisets.
    pub fn enumerate(nu: usize, mu: usize) -> Vec<MonotoneTwoCnf> {
        let pairs: Vec<(usize, usize)> = (1..=nu).flat_map(|x| (x..=nu).map(move |y| (x, y))).collect();
        let mut out = Vec::new();
        let mut pick = Vec::with_capacity(mu);
        fn rec(
            pairs: &[(usize, usize)],
            from: usize,
            left: usize,
            nu: usize,
            pick: &mut Vec<(usize, usize)>,
            out: &mut Vec<MonotoneTwoCnf>,
        ) {
            if left == 0 {
                out.push(MonotoneTwoCnf {
                    nu,
                    clauses: pick.clone(),
                });
                return;
            }
            for k in from..pairs.len() {
                pick.push(pairs[k]);
                rec(pairs, k, left - 1, nu, pick, out);
                pick.pop();
            }
        }
        rec(&pairs, 0, mu, nu, &mut pick, &mut out);
        out
    }
}

impl FromStr for MonotoneTwoCnf {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse(s)
    }
}

impl fmt::Display for MonotoneTwoCnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.clauses.is_empty() {
            return write!(f, "⊤ (nu = {})", self.nu);
        }
        let parts: Vec<String> = self.clauses.iter().map(|(x, y)| format!("(x{x} ∨ x{y})")).collect();
        write!(f, "{}", parts.join(" ∧ "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Literal {
    Tau,
    Var(usize),
}

/// The 3-CNF view `∧ (τ ∨ x ∨ y)`. Its count is `s' = 2^nu + s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauAugmented {
    pub nu: usize,
    pub clauses: Vec<[Literal; 3]>,
}

impl TauAugmented {
    /// Satisfying assignments of `φ'` over `nu + 1` variables, by enumeration.
    pub fn count_satisfying(&self) -> Result<BigInt> {
        if self.nu + 1 > COUNT_MAX_VARS {
            return Err(Error::CapExceeded {
                what: "variables to enumerate",
                limit: COUNT_MAX_VARS,
                actual: self.nu + 1,
            });
        }
        let holds = |a: u64, l: Literal| match l {
            Literal::Tau => a >> self.nu & 1 == 1,
            Literal::Var(x) => a >> (x - 1) & 1 == 1,
        };
        let count = (0..1u64 << (self.nu + 1))
            .filter(|&a| self.clauses.iter().all(|c| c.iter().any(|&l| holds(a, l))))
            .count();
        Ok(BigInt::from(count))
    }

    /// `s = s' - 2^nu`.
    pub fn original_count(&self, s_prime: &BigInt) -> BigInt {
        s_prime - (BigInt::from(1) << self.nu)
    }
}
