//! Exact partition functions for the ferromagnetic Ising and monomer-dimer
//! models, certificates for the location of their zeros, and the reductions
//! that recover a partition function from an oracle for one of its averages.

pub mod complex;
pub mod error;
pub mod graphs;
pub mod partition;
pub mod poly;
pub mod ratinterp;
pub mod rational;
pub mod reductions;
pub mod satgadgets;
pub mod zeros;

pub use error::{Error, Result};
pub use graphs::{DirectedWeightedGraph, MultiGraph};
pub use poly::UniPoly;
pub use rational::Q;
