//! Exact sparse linear algebra over the rationals.

mod elimination;
mod sparse;

pub use elimination::{kernel_basis, rank, solve_in_image, EchelonBasis, Rref};
pub use sparse::{axpy, dense_to_sparse, normalize, sparse_to_dense, Accumulator, SparseMatrix, SparseVec};
