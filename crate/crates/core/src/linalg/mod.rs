//! Exact sparse linear algebra over `Q(q)`.

mod direct;
mod matrix;
mod rref;
mod subspace;

pub use direct::DirectSum;
pub use matrix::{leg_permutation, row_axpy, row_from_dense, row_kron, row_scale, row_to_dense, ExactMatrix, SparseRow};
pub use rref::{determinant, inverse, kernel, left_kernel, rank, rref, Echelon};
pub use subspace::{eval_row_at, regularize_at, Subspace};
