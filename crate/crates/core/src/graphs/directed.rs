use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Directed graph with integer arc weights and at most one arc per ordered
/// pair (self-loops allowed).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct DirectedWeightedGraph {
    n: usize,
    arcs: BTreeMap<(usize, usize), i64>,
}

impl DirectedWeightedGraph {
    pub fn new(n: usize) -> Self {
        DirectedWeightedGraph {
            n,
            arcs: BTreeMap::new(),
        }
    }

    pub fn from_arcs(n: usize, arcs: &[(usize, usize, i64)]) -> Result<Self> {
        let mut g = Self::new(n);
        for &(x, y, w) in arcs {
            g.add_arc(x, y, w)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_vertex(&mut self) -> usize {
        self.n += 1;
        self.n - 1
    }

    /// Adds an arc; a second arc on the same ordered pair is an error rather
    /// than being merged.
    pub fn add_arc(&mut self, x: usize, y: usize, w: i64) -> Result<()> {
        if x >= self.n || y >= self.n {
            return Err(Error::InvalidInput(format!("arc ({x}, {y}) out of range")));
        }
        if w == 0 {
            return Err(Error::InvalidInput(format!("arc ({x}, {y}) has weight 0")));
        }
        if self.arcs.contains_key(&(x, y)) {
            return Err(Error::InvalidInput(format!("duplicate arc ({x}, {y})")));
        }
        self.arcs.insert((x, y), w);
        Ok(())
    }

    pub fn remove_arc(&mut self, x: usize, y: usize) -> Option<i64> {
        self.arcs.remove(&(x, y))
    }

    pub fn weight(&self, x: usize, y: usize) -> Option<i64> {
        self.arcs.get(&(x, y)).copied()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
        self.arcs.iter().map(|(&(x, y), &w)| (x, y, w))
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn out_degree(&self, x: usize) -> usize {
        self.arcs.range((x, 0)..(x + 1, 0)).count()
    }

    pub fn in_degree(&self, y: usize) -> usize {
        self.arcs.keys().filter(|&&(_, t)| t == y).count()
    }

    pub fn max_in_out_degree(&self) -> (usize, usize) {
        let mut ind = vec![0; self.n];
        let mut outd = vec![0; self.n];
        for &(x, y) in self.arcs.keys() {
            outd[x] += 1;
            ind[y] += 1;
        }
        (ind.into_iter().max().unwrap_or(0), outd.into_iter().max().unwrap_or(0))
    }

    /// Dense adjacency matrix (row = source, column = target).
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.n]; self.n];
        for (&(x, y), &w) in &self.arcs {
            m[x][y] = w;
        }
        m
    }

    pub fn weights(&self) -> std::collections::BTreeSet<i64> {
        self.arcs.values().copied().collect()
    }
}
