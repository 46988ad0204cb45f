//! Monotone 2-SAT counting as a cycle-cover weight: gadgets, the compiler,
//! a permanent oracle, and the alternating Hamiltonian path certificate.

pub mod cnf;
pub mod compile;
pub mod gadgets;
pub mod hamilton;
pub mod permanent;

pub use cnf::{MonotoneTwoCnf, TauAugmented};
pub use compile::{
    compile, degree_audit, extract_sat_count, replace_arcs_with_chains, replace_negative_arcs, Mode, ReductionOutput,
};
pub use gadgets::{derive_gadget_weights, verify_gadget_properties, GadgetTemplate};
pub use hamilton::{build_hamiltonian_certificate, validate_certificate, AlternatingPath, Side};
pub use permanent::cycle_cover_weight;
