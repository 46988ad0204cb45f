//! Zero location: root approximation, exact certificates (Schur-Cohn,
//! Sturm, gcd) and randomized probes of the multivariate statements.

pub mod certify;
pub mod modular;
pub mod probes;
pub mod roots;
pub mod schur_cohn;
pub mod sturm;

pub use certify::{
    certify_coprime_with_derivative, certify_imaginary_axis_and_simple, certify_squarefree,
    certify_strictly_inside_unit_disk, certify_unit_circle, Certificate, Property, Witness,
};
pub use probes::{gauss_lucas_check, newman_check, wsglp_probe, GaussLucasReport, SamplerConfig};
pub use roots::{find_roots, RootApprox, RootSet};
