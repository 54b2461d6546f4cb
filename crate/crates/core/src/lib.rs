pub mod algebra;
pub mod cochain;
pub mod complexes;
pub mod error;
pub mod extensions;
pub mod io;
pub mod leibniz;
pub mod linalg;
pub mod multiindex;
pub mod scalar;
pub mod spectral;
pub mod witness;

#[cfg(test)]
mod proptests;

pub use algebra::{NLieAlgebra, Representation};
pub use error::{Error, Result};
pub use linalg::{SparseMatrix, SparseVec};
pub use scalar::Scalar;
pub use witness::{Check, Violation};
