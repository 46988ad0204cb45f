//! Partition functions: definitional enumeration, a frontier transfer
//! computation for larger graphs, Gibbs averages and weighted variants.

pub mod enumerate;
pub mod observables;
pub mod transfer;
pub mod weighted;

pub use enumerate::{EnumCaps, SpinCensus};
pub use observables::{ObservableKind, ObservableValue};
pub use weighted::{ActivityAssignment, VertexWeights};
