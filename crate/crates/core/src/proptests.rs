//! Cross-module properties on random cochains and coefficients.

use crate::complexes::{Complex, ComplexKind};
use crate::extensions::{
    abelian_extension, alternating_degree2_embedding, check_axiom, derivation_space, is_derivation,
    solve_linear_axioms, Axiom, GeneralizedDerivation,
};
use crate::io::{to_canonical_json, AlgebraFile, CochainFile};
use crate::linalg::{rank, Accumulator, SparseVec};
use crate::multiindex::{rank_of, sort_with_sign, unrank, WedgeBasis};
use crate::spectral::{filtration_level, DeltaDComp, SubalgebraSpec, SubspaceKind};
use crate::{NLieAlgebra, Representation, Scalar, SparseMatrix};
use proptest::prelude::*;

fn algebra_by_index(i: usize) -> NLieAlgebra {
    match i {
        0 => NLieAlgebra::sl2(),
        1 => NLieAlgebra::simple(3),
        2 => NLieAlgebra::simple(4),
        _ => NLieAlgebra::simple(2),
    }
}

fn rep_of(a: &NLieAlgebra, adjoint: bool) -> Representation {
    if adjoint {
        Representation::adjoint(a)
    } else {
        Representation::trivial(a, 2)
    }
}

fn coefficients(len: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(prop_oneof![2 => Just(0i64), 1 => -4i64..5], len)
}

fn to_sparse(coeffs: &[i64]) -> SparseVec {
    coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, Scalar::from_int(c))).collect()
}

fn combination(basis: &[SparseVec], coeffs: &[i64]) -> SparseVec {
    let mut acc = Accumulator::new();
    for (v, &c) in basis.iter().zip(coeffs) {
        acc.add_scaled(v, &Scalar::from_int(c));
    }
    acc.finish()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn wedge_rank_round_trips(d in 1usize..9, k in 0usize..5, seed in any::<usize>()) {
        prop_assume!(k <= d);
        let basis = WedgeBasis::new(d, k);
        let pos = seed % basis.len();
        let tuple = unrank(pos, k, d).unwrap();
        prop_assert_eq!(rank_of(&tuple, d).unwrap(), pos);
        prop_assert_eq!(basis.tuple(pos), tuple.as_slice());
    }

    #[test]
    fn sorting_sign_matches_transposition_count(perm in Just((0..5).collect::<Vec<usize>>()).prop_shuffle()) {
        let (sorted, sign) = sort_with_sign(&perm).unwrap();
        prop_assert_eq!(sorted, (0..5).collect::<Vec<_>>());
        let inversions = (0..5).flat_map(|i| (i + 1..5).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        prop_assert_eq!(sign, if inversions % 2 == 0 { 1 } else { -1 });
    }

    #[test]
    fn rank_is_transpose_invariant(rows in proptest::collection::vec(coefficients(6), 1..6)) {
        let m = SparseMatrix::from_rows(6, rows.iter().map(|r| to_sparse(r)).collect());
        prop_assert_eq!(rank(&m), rank(&m.transpose()));
    }

    #[test]
    fn coboundaries_are_cocycles(which in 0usize..4, adjoint in any::<bool>(), m in 0usize..3, seed in coefficients(64)) {
        let a = algebra_by_index(which);
        let r = rep_of(&a, adjoint);
        for kind in [ComplexKind::Standard, ComplexKind::Alternate] {
            let cx = Complex::new(&r, kind).unwrap();
            let dim = cx.space(m).dim();
            let f = to_sparse(&seed[..dim.min(seed.len())]);
            let df = cx.matrix(m).mul_sparse_vec(&f);
            prop_assert!(cx.matrix(m + 1).mul_sparse_vec(&df).is_empty(), "{} degree {}", kind, m);
        }
    }

    #[test]
    fn extension_satisfies_identity_iff_cocycle(which in 0usize..3, adjoint in any::<bool>(), seed in coefficients(40), cocycle in any::<bool>()) {
        let a = algebra_by_index(which);
        let r = rep_of(&a, adjoint);
        let cx = Complex::new(&r, ComplexKind::Standard).unwrap();
        let emb = alternating_degree2_embedding(&r);
        let raw = to_sparse(&seed[..emb.cols().min(seed.len())]);
        let f = if cocycle {
            let h = to_sparse(&seed[..cx.space(1).dim().min(seed.len())]);
            cx.matrix(1).mul_sparse_vec(&h)
        } else {
            emb.mul_sparse_vec(&raw)
        };
        let closed = cx.matrix(2).mul_sparse_vec(&f).is_empty();
        let ext = abelian_extension(&r, &f).unwrap();
        prop_assert_eq!(ext.validate_fundamental_identity().is_ok(), closed);
    }

    #[test]
    fn derivation_combinations_are_derivations(which in 0usize..4, seed in coefficients(12)) {
        let a = algebra_by_index(which);
        let basis = derivation_space(&a);
        let mut total = SparseMatrix::zeros(a.dim(), a.dim());
        for (d, &c) in basis.iter().zip(&seed) {
            total = total.add(&d.scale(&Scalar::from_int(c))).unwrap();
        }
        prop_assert!(is_derivation(&a, &total).is_ok());
    }

    #[test]
    fn linear_axiom_family_is_closed(seed in coefficients(32)) {
        let a = NLieAlgebra::simple(3);
        let family = solve_linear_axioms(&a, &[Axiom::I, Axiom::II]).unwrap();
        let values: Vec<SparseVec> = (0..family[0].values().len())
            .map(|t| combination(&family.iter().map(|dd| dd.values()[t].clone()).collect::<Vec<_>>(), &seed))
            .collect();
        let dd = GeneralizedDerivation::from_values(&a, values).unwrap();
        prop_assert!(check_axiom(&a, &dd, Axiom::I).is_ok());
        prop_assert!(check_axiom(&a, &dd, Axiom::II).is_ok());
    }

    #[test]
    fn differential_preserves_filtration(m in 0usize..3, seed in coefficients(64), adjoint in any::<bool>()) {
        let a = NLieAlgebra::simple(3);
        let r = rep_of(&a, adjoint);
        let spec = SubalgebraSpec::new(&a, vec![0, 1], SubspaceKind::Subalgebra).unwrap();
        let cx = Complex::new(&r, ComplexKind::Standard).unwrap();
        let f = to_sparse(&seed[..cx.space(m).dim().min(seed.len())]);
        let df = cx.matrix(m).mul_sparse_vec(&f);
        prop_assert!(filtration_level(&r, &spec, m + 1, &df) >= filtration_level(&r, &spec, m, &f));
    }

    #[test]
    fn delta_splits_on_mixed_cochains(which in 0usize..3, r in 0usize..2, seed in coefficients(96)) {
        let a = algebra_by_index(which);
        let rep = Representation::adjoint(&a);
        let id = DeltaDComp::new(&rep, r, 2).unwrap();
        let f = to_sparse(&seed[..id.source_dim().min(seed.len())]);
        prop_assert!(id.check(&f).is_ok());
    }

    #[test]
    fn cochain_files_round_trip(which in 0usize..3, degree in 0usize..3, seed in coefficients(48)) {
        let a = algebra_by_index(which);
        let r = Representation::adjoint(&a);
        let cx = Complex::new(&r, ComplexKind::Standard).unwrap();
        let f = to_sparse(&seed[..cx.space(degree).dim().min(seed.len())]);
        let file = CochainFile::from_vector(&r, ComplexKind::Standard, degree, &f).unwrap();
        prop_assert_eq!(file.to_vector(&r).unwrap(), f);
        let text = to_canonical_json(&file).unwrap();
        let back: CochainFile = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(to_canonical_json(&back).unwrap(), text);
    }

    #[test]
    fn algebra_files_round_trip(num in -20i64..20, den in 1i64..9) {
        let mut a = NLieAlgebra::simple(3);
        a.set_bracket(&[0, 1, 2], vec![(3, Scalar::new(num, den))]).unwrap();
        let text = to_canonical_json(&AlgebraFile::from_algebra(&a)).unwrap();
        let parsed: AlgebraFile = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(parsed.to_algebra().unwrap(), a);
        prop_assert_eq!(to_canonical_json(&parsed).unwrap(), text);
    }
}
