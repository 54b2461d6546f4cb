//! Shared workloads for the benchmarks.

use nlie_core::complexes::{Complex, ComplexKind};
use nlie_core::{NLieAlgebra, Representation, SparseMatrix};

/// Named algebras with their adjoint representations, smallest first.
pub fn adjoint_workloads() -> Vec<(&'static str, Representation)> {
    [("sl2", NLieAlgebra::sl2()), ("simple3", NLieAlgebra::simple(3)), ("simple4", NLieAlgebra::simple(4))]
        .into_iter()
        .map(|(name, a)| (name, Representation::adjoint(&a)))
        .collect()
}

/// The degree-`m` standard differential, assembled once for rank benchmarks.
pub fn standard_differential(rep: &Representation, m: usize) -> SparseMatrix {
    Complex::new(rep, ComplexKind::Standard).expect("standard complex").matrix(m)
}
