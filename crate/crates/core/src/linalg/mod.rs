//! Exact linear algebra over `Q` and `F_p`.
//!
//! Dense [`Matrix`] handles the small systems (centers, derivations,
//! commutator maps); [`Subspace`] is an incremental sparse reducer used for
//! ideal spans, quotient bookkeeping and the bar differentials.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::{EchelonForm, Matrix};
pub use scalar::{Field, Scalar, MAX_PRIME};
pub use subspace::{sparse_rank, SparseVec, Subspace};

/// Reduced row echelon form of `m`.
pub fn echelonize(m: &Matrix) -> EchelonForm {
    m.echelonize()
}

pub fn kernel_basis(m: &Matrix) -> Vec<Vec<Scalar>> {
    m.kernel_basis()
}

pub fn cokernel_dim(m: &Matrix) -> usize {
    m.cokernel_dim()
}

pub fn solution_space_dim(constraints: &Matrix) -> usize {
    constraints.solution_space_dim()
}
