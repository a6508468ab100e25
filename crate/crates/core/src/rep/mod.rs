//! `U_q(sl n)` through its finite-dimensional modules.

mod action;
mod rmatrix;
mod trace;

pub use action::{coords_in_columns, hom_space, invariants, Gen, RepAction};
pub use rmatrix::{
    embed13, flip, hecke_residual, intertwining_residual, is_intertwiner, partial_transpose, r_matrix, yang_baxter_residual, Letter,
    RContext, Word,
};
pub use trace::{pair, quantum_trace, PivotalWeights};
