//! The quantum Lie algebra `L` of `U_q(sl n)`: the map `f`, `C_V`, the
//! coproduct split, braiding and bracket, and relation certificates.

mod fmap;
mod structure;

pub use fmap::{c_v, c_v_inverse, contract_first_leg, divide_by_h, f_equivariance_residual, f_map, lie_generators};
pub use structure::{QuantumLie, QuantumLieData, Realization};
mod verify;

pub use verify::{
    braid_residual, classical_limit_certs, equivariance_certs, q_invariance_certs, re_algebra_cross_check, relation_residuals,
    rmatrix_certs, scale_insensitivity_certs, sigma_eigen_certs, structure_constants, verify_relations, verify_relations_stable,
};
