//! One line per acceptance criterion. Runs without the libtest harness so the
//! lines always reach the terminal; exits non-zero if any criterion fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use nlie_core::algebra::{NLieAlgebra, Representation};
use nlie_core::cochain::random_vector;
use nlie_core::complexes::{
    complexes_coincide_check, ChainMap, ChainMapKind, Coincidence, Complex, ComplexKind, DegreeZero,
};
use nlie_core::extensions::{
    abelian_extension, alternating_degree2_embedding, check_axiom, derivation_space, extensions_equivalent,
    gen_der_cocycle_check, gen_der_extension, inner_derivation_dim, is_generalized_derivation, solve_linear_axioms,
    Axiom, Equivalence, GeneralizedDerivation,
};
use nlie_core::leibniz::{fundamental_rep, induced_leibniz, rep_on_cochains, rep_on_l_tensor_v, rep_on_ln2_tensor_v};
use nlie_core::linalg::{dense_to_sparse, kernel_basis, Accumulator, SparseVec};
use nlie_core::multiindex::WedgeBasis;
use nlie_core::spectral::{
    check_filtration_preserved, e1_page, gen_der_ext_cohomology_compare, DeltaDComp, SubalgebraSpec, SubspaceKind,
};
use nlie_core::{Scalar, SparseMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x6e6c6965;
const MAX_LISTED: usize = 30;

type Criterion = (&'static str, fn() -> Findings);

struct Fixture {
    name: String,
    algebra: NLieAlgebra,
}

fn fixture(name: impl Into<String>, algebra: NLieAlgebra) -> Fixture {
    Fixture { name: name.into(), algebra }
}

/// abelian(n, d) for n ∈ {2,3,4}, d ≤ 5, then simple(2..4) and sl2.
fn fixtures() -> Vec<Fixture> {
    let mut out = Vec::new();
    for n in 2..=4 {
        for d in 1..=5 {
            out.push(fixture(format!("abelian({n},{d})"), NLieAlgebra::abelian(n, d)));
        }
    }
    for n in 2..=4 {
        out.push(fixture(format!("simple({n})"), NLieAlgebra::simple(n)));
    }
    out.push(fixture("sl2", NLieAlgebra::sl2()));
    out
}

fn reps(a: &NLieAlgebra) -> [(&'static str, Representation); 2] {
    [("adjoint", Representation::adjoint(a)), ("trivial", Representation::trivial(a, 1))]
}

/// Collects failure messages; a criterion passes when none were recorded.
#[derive(Default)]
struct Findings {
    checked: usize,
    failures: Vec<String>,
}

impl Findings {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn sum(a: &[(usize, Scalar)], b: &[(usize, Scalar)], scale_b: i64) -> SparseVec {
    let mut acc = Accumulator::new();
    acc.add_scaled(a, &Scalar::ONE);
    acc.add_scaled(b, &Scalar::from_int(scale_b));
    acc.finish()
}

fn differential_property() -> Findings {
    let mut f = Findings::default();
    for fx in fixtures() {
        for (rname, r) in reps(&fx.algebra) {
            let mut kinds = vec![ComplexKind::Standard, ComplexKind::Alternate, ComplexKind::Leibniz];
            if fx.algebra.arity() == 2 {
                kinds.push(ComplexKind::Lie);
            }
            for kind in kinds {
                let cx = Complex::new(&r, kind).expect("complex exists");
                for m in 0..=3 {
                    let c = cx.check_square_zero(m);
                    f.expect(c.is_ok(), || format!("{} {rname} {kind}: δ{}∘δ{m} ≠ 0", fx.name, m + 1));
                }
            }
        }
    }
    f
}

fn chain_maps() -> Findings {
    let mut f = Findings::default();
    for fx in fixtures() {
        for (rname, r) in reps(&fx.algebra) {
            for kind in [ChainMapKind::Delta, ChainMapKind::Theta] {
                let map = ChainMap::new(&r, kind, DegreeZero::Commuting);
                for m in 0..=2 {
                    let c = map.check_square(m);
                    f.expect(c.is_ok(), || format!("{} {rname} {kind:?} degree {m}: {:?}", fx.name, c.err()));
                }
            }
        }
    }
    f
}

fn ternary_coincidence() -> Findings {
    let mut f = Findings::default();
    for fx in fixtures() {
        for (rname, r) in reps(&fx.algebra) {
            let outcomes: Vec<Coincidence> = (0..=2).map(|m| complexes_coincide_check(&r, m)).collect();
            if fx.algebra.arity() == 3 {
                for (m, c) in outcomes.iter().enumerate() {
                    f.expect(matches!(c, Coincidence::Identical { .. }), || {
                        format!("{} {rname} degree {m}: {c:?}", fx.name)
                    });
                }
            } else if fx.algebra.dim() >= fx.algebra.arity() {
                let witnessed = outcomes.iter().any(|c| matches!(c, Coincidence::DimensionMismatch { .. }));
                f.expect(witnessed, || format!("{} {rname}: no dimension mismatch witness", fx.name));
            }
        }
    }
    f
}

fn representation_suite() -> Findings {
    let mut f = Findings::default();
    for fx in fixtures() {
        let a = &fx.algebra;
        let adjoint = Representation::adjoint(a);
        let nlie_reps =
            [("adjoint", adjoint.clone()), ("trivial", Representation::trivial(a, 2)), ("Hom(L,W)", adjoint.hom(2))];
        for (name, r) in &nlie_reps {
            let v = r.validate();
            f.expect(v.is_ok(), || format!("{} {name}: {:?}", fx.name, v.err()));
            let id = r.check_rep_identity();
            f.expect(id.is_ok(), || format!("{} {name} identity: {:?}", fx.name, id.err()));
        }
        let lb = induced_leibniz(a);
        let mut leibniz_reps = vec![("fundamental".to_string(), fundamental_rep(a))];
        for (rname, r) in [("adjoint", &adjoint), ("trivial", &nlie_reps[1].1)] {
            leibniz_reps.push((format!("Λ^(n-2)L⊗V, {rname}"), rep_on_ln2_tensor_v(r)));
            leibniz_reps.push((format!("L⊗V, {rname}"), rep_on_l_tensor_v(r)));
            for m in 0..=2 {
                leibniz_reps.push((format!("C^{m}(L,V), {rname}"), rep_on_cochains(r, m)));
            }
        }
        for (name, rep) in &leibniz_reps {
            let v = rep.validate(&lb);
            f.expect(v.is_ok(), || format!("{} {name}: {:?}", fx.name, v.err()));
        }
    }
    f
}

/// Random degree-2 cochains, half drawn from the cocycles so both sides of
/// the equivalence get exercised.
fn random_degree2(rng: &mut ChaCha8Rng, emb: &SparseMatrix, cocycles: &[SparseVec], k: usize) -> SparseVec {
    if k.is_multiple_of(2) || cocycles.is_empty() {
        emb.mul_sparse_vec(&random_vector(rng, emb.cols(), 3))
    } else {
        let mut acc = Accumulator::new();
        for z in cocycles {
            acc.add_scaled(z, &Scalar::from_int(rng.gen_range(-3..=3)));
        }
        acc.finish()
    }
}

fn abelian_extensions() -> Findings {
    let mut f = Findings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for fx in fixtures() {
        for (rname, r) in reps(&fx.algebra) {
            let cx = Complex::new(&r, ComplexKind::Standard).unwrap();
            let (d1, d2) = (cx.matrix(1), cx.matrix(2));
            let emb = alternating_degree2_embedding(&r);
            let cocycles: Vec<SparseVec> =
                kernel_basis(&d2.mul(&emb).unwrap()).iter().map(|v| emb.mul_sparse_vec(&dense_to_sparse(v))).collect();
            for k in 0..100 {
                let cochain = random_degree2(&mut rng, &emb, &cocycles, k);
                let fi = abelian_extension(&r, &cochain).unwrap().validate_fundamental_identity().is_ok();
                let closed = d2.mul_sparse_vec(&cochain).is_empty();
                f.expect(fi == closed, || format!("{} {rname} sample {k}: FI {fi}, cocycle {closed}", fx.name));

                if closed && k % 5 == 1 {
                    let h0 = random_vector(&mut rng, d1.cols(), 3);
                    let dh0 = d1.mul_sparse_vec(&h0);
                    let shifted = sum(&cochain, &dh0, 1);
                    match extensions_equivalent(&r, &shifted, &cochain) {
                        Ok(Equivalence::Equivalent { h }) => {
                            let recovered = d1.mul_sparse_vec(&h);
                            f.expect(recovered == dh0, || format!("{} {rname} sample {k}: δh ≠ δh₀", fx.name));
                        }
                        other => f.expect(false, || format!("{} {rname} sample {k}: {other:?}", fx.name)),
                    }
                }
            }
        }
    }
    f
}

fn generalized_derivations() -> Findings {
    let mut f = Findings::default();
    let mut algebras = vec![fixture("simple(3)", NLieAlgebra::simple(3))];
    for d in 1..=4 {
        algebras.push(fixture(format!("abelian(3,{d})"), NLieAlgebra::abelian(3, d)));
    }
    for fx in &algebras {
        let a = &fx.algebra;
        let family = solve_linear_axioms(a, &[Axiom::I, Axiom::II]).unwrap();
        for (i, dd) in family.iter().enumerate() {
            let c = gen_der_cocycle_check(a, dd);
            f.expect(matches!(c, Ok(Ok(()))), || format!("{} basis member {i}: δ(D♯) ≠ 0: {c:?}", fx.name));
            if check_axiom(a, dd, Axiom::III).is_ok() {
                let fi = gen_der_extension(a, dd).validate_fundamental_identity();
                f.expect(fi.is_ok(), || format!("{} basis member {i}: extension fails FI", fx.name));
            }
        }
        let w = WedgeBasis::new(a.dim(), a.arity() - 2);
        for y in 0..w.len() {
            let inner = GeneralizedDerivation::inner(a, &[(y, Scalar::ONE)]);
            let report = is_generalized_derivation(a, &inner);
            f.expect(report.all_ok(), || format!("{} ad_{y}: axioms fail", fx.name));
            let fi = gen_der_extension(a, &inner).validate_fundamental_identity();
            f.expect(fi.is_ok(), || format!("{} ad_{y}: extension fails FI", fx.name));
        }
    }

    // Corrupting ad_{e1} on simple(3) must break the extension, with a witness.
    let a = NLieAlgebra::simple(3);
    let mut values = GeneralizedDerivation::inner(&a, &[(0, Scalar::ONE)]).values().to_vec();
    values[0] = sum(&values[0], &[(0, Scalar::ONE)], 1);
    let corrupted = GeneralizedDerivation::from_values(&a, values).unwrap();
    let fi = gen_der_extension(&a, &corrupted).validate_fundamental_identity();
    f.expect(fi.as_ref().is_err_and(|w| !w.args.is_empty()), || format!("corrupted D: {fi:?}"));
    f
}

fn lie_recovery() -> Findings {
    let mut f = Findings::default();
    let a = NLieAlgebra::sl2();
    let r = Representation::adjoint(&a);
    let cx = Complex::new(&r, ComplexKind::Lie).unwrap();
    let h1 = cx.cohomology(1, false);
    let der = derivation_space(&a).len();
    let inner = inner_derivation_dim(&a);
    f.expect(der == h1.dim_cocycles, || format!("dim Der = {der}, dim Z¹ = {}", h1.dim_cocycles));
    f.expect(inner == h1.dim_coboundaries, || format!("dim Inn = {inner}, dim B¹ = {}", h1.dim_coboundaries));
    f.expect(h1.dim_h == 0, || format!("dim H¹(sl2, sl2) = {}", h1.dim_h));
    f
}

fn spectral_sequence() -> Findings {
    let mut f = Findings::default();
    let simple3 = NLieAlgebra::simple(3);
    let ext = gen_der_extension(&simple3, &GeneralizedDerivation::inner(&simple3, &[(0, Scalar::ONE)]));
    let cases = [
        ("sl2, K = ⟨e⟩", NLieAlgebra::sl2(), vec![0]),
        ("sl2, K = ⟨h⟩", NLieAlgebra::sl2(), vec![2]),
        ("simple(3), K = ⟨e1,e2⟩", simple3.clone(), vec![0, 1]),
        ("simple(4), K = ⟨e1,e2,e3⟩", NLieAlgebra::simple(4), vec![0, 1, 2]),
        ("L⊕_D k, K = k", ext.clone(), vec![4]),
    ];
    for (name, a, members) in &cases {
        let spec = SubalgebraSpec::new(a, members.clone(), SubspaceKind::Subalgebra).unwrap();
        for (rname, r) in reps(a) {
            for m in 0..=2 {
                let c = check_filtration_preserved(&r, &spec, m).unwrap();
                f.expect(c.is_ok(), || format!("{name} {rname}: δF_j ⊄ F_j in degree {m}"));
            }
            let e1 = e1_page(&r, &spec, 2).unwrap();
            f.expect(e1.agrees(), || {
                let cells: Vec<String> = e1
                    .mismatches
                    .iter()
                    .map(|c| format!("E₁^{{{},{}}} {} vs {}", c.j, c.i, c.graded, c.leibniz))
                    .collect();
                format!("{name} {rname}: graded vs Leibniz differ at {}", cells.join(", "))
            });
        }
    }

    // K = k in L⊕_D k: E₁^{j,i>0} = 0 and E₁^{j,0} = dim C^j(L,V).
    let spec = SubalgebraSpec::new(&ext, vec![4], SubspaceKind::Subalgebra).unwrap();
    for dim_v in [1, 2] {
        let over_ext = Representation::trivial(&ext, dim_v);
        let base_rep = Representation::trivial(&simple3, dim_v);
        let base = Complex::new(&base_rep, ComplexKind::Standard).unwrap();
        let e1 = e1_page(&over_ext, &spec, 2).unwrap();
        for cell in &e1.graded.cells {
            let expected = if cell.i > 0 { 0 } else { base.space(cell.j).dim() };
            f.expect(cell.dim == expected, || {
                format!(
                    "L⊕_D k, dim V = {dim_v}: graded E₁^{{{},{}}} = {}, expected {expected}",
                    cell.j, cell.i, cell.dim
                )
            });
        }
    }

    // Cohomology of L⊕_D k against L, two direct rank computations.
    for dd in [GeneralizedDerivation::zero(&simple3), GeneralizedDerivation::inner(&simple3, &[(0, Scalar::ONE)])] {
        let ext = gen_der_extension(&simple3, &dd);
        let over_ext = Representation::trivial(&ext, 1);
        for row in gen_der_ext_cohomology_compare(&simple3, &dd, &over_ext, 2).unwrap() {
            f.expect(row.equal, || format!("H^{}: {} for L⊕_D k vs {} for L", row.degree, row.extension, row.base));
        }
    }
    f
}

fn delta_d_identity() -> Findings {
    let mut f = Findings::default();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    for fx in fixtures() {
        if fx.algebra.dim() < fx.algebra.arity() - 1 {
            continue;
        }
        for (rname, r) in reps(&fx.algebra) {
            for (rr, s) in [(0, 2), (1, 2), (0, 3)] {
                let id = DeltaDComp::new(&r, rr, s).unwrap();
                for k in 0..50 {
                    let cochain = random_vector(&mut rng, id.source_dim(), 3);
                    let c = id.check(&cochain);
                    f.expect(c.is_ok(), || format!("{} {rname} (r,s) = ({rr},{s}) sample {k}: {:?}", fx.name, c.err()));
                }
            }
        }
    }
    f
}

fn nlie_binary() -> Option<PathBuf> {
    let exe = std::env::current_exe().ok()?;
    let candidate = exe.parent()?.parent()?.join(format!("nlie{}", std::env::consts::EXE_SUFFIX));
    if !candidate.exists() {
        let cargo = std::env::var("CARGO").unwrap_or_else(|_| "cargo".into());
        let status = Command::new(cargo).args(["build", "-q", "-p", "nlie-cli", "--bin", "nlie"]).status().ok()?;
        if !status.success() {
            return None;
        }
    }
    candidate.exists().then_some(candidate)
}

fn cli_contract(started: Instant) -> Findings {
    let mut f = Findings::default();
    let Some(bin) = nlie_binary() else {
        f.expect(false, || "nlie binary unavailable".into());
        return f;
    };
    let corpus = Path::new(env!("CARGO_MANIFEST_DIR")).join("../cli/tests");
    let fx = |name: &str| corpus.join("fixtures").join(name).to_string_lossy().into_owned();
    let golden = |name: &str| std::fs::read_to_string(corpus.join("golden").join(name)).unwrap_or_default();
    let run = |args: &[String]| Command::new(&bin).args(args).output().expect("nlie runs");
    let owned = |args: &[&str]| args.iter().map(|s| s.to_string()).collect::<Vec<_>>();

    let goldens = [
        (owned(&["validate", &fx("simple3.json"), "--rep", "adjoint"]), "validate_simple3_adjoint.json", 0),
        (owned(&["validate", &fx("broken.json")]), "validate_broken.json", 2),
        (
            owned(&["cohomology", &fx("simple3.json"), "--rep", "adjoint", "--complex", "standard", "--degree", "1"]),
            "cohomology_simple3_adjoint_std1.json",
            0,
        ),
        (
            owned(&[
                "cohomology",
                &fx("abelian3_4.json"),
                "--rep",
                "trivial:1",
                "--complex",
                "standard",
                "--degree",
                "1",
            ]),
            "cohomology_abelian3_4_trivial_std1.json",
            0,
        ),
        (
            owned(&["extend", "abelian", &fx("simple3.json"), "--rep", "adjoint", &fx("f_cocycle.json")]),
            "extend_abelian_simple3.json",
            0,
        ),
        (
            owned(&["extend", "gen-der", &fx("simple3.json"), &fx("inner_ad_e1.json")]),
            "extend_gender_simple3_ad_e1.json",
            0,
        ),
    ];
    let scratch = std::env::temp_dir().join(format!("nlie-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&scratch).unwrap();
    for (args, name, code) in &goldens {
        let out = run(args);
        f.expect(out.status.code() == Some(*code), || format!("{name}: exit {:?}, expected {code}", out.status.code()));
        let text = String::from_utf8_lossy(&out.stdout).into_owned();
        f.expect(text == golden(name), || format!("{name}: output differs from golden"));
        if args[0] == "extend" {
            let written = scratch.join(name);
            std::fs::write(&written, &text).unwrap();
            let again = run(&owned(&["validate", &written.to_string_lossy()]));
            f.expect(again.status.success(), || format!("{name}: emitted algebra does not re-validate"));
            let copy = scratch.join(format!("copy-{name}"));
            let rewrite = run(&owned(&[
                "--out",
                &copy.to_string_lossy(),
                "extend",
                "gen-der",
                &fx("simple3.json"),
                &fx("inner_ad_e1.json"),
            ]));
            f.expect(rewrite.status.success(), || "extend --out failed".into());
        }
    }
    let _ = std::fs::remove_dir_all(&scratch);

    for (args, code) in [
        (owned(&["validate", &fx("malformed.json")]), 1),
        (owned(&["validate", &fx("unknown_field.json")]), 1),
        (owned(&["validate", &fx("no_such_file.json")]), 1),
        (owned(&["frobnicate"]), 1),
        (owned(&["check-gen-derivation", &fx("simple3.json"), &fx("corrupted_d.json")]), 2),
        (owned(&["extend", "gen-der", &fx("simple3.json"), &fx("corrupted_d.json")]), 2),
        (owned(&["check-gen-derivation", &fx("simple3.json"), &fx("inner_ad_e1.json")]), 0),
    ] {
        let out = run(&args);
        f.expect(out.status.code() == Some(code), || {
            format!("{args:?}: exit {:?}, expected {code}", out.status.code())
        });
    }

    let elapsed = started.elapsed();
    f.expect(elapsed < Duration::from_secs(300), || format!("suite took {elapsed:?}"));
    f
}

fn main() {
    let started = Instant::now();
    let criteria: [Criterion; 9] = [
        ("differential property: δ∘δ = 0", differential_property),
        ("chain maps Δ and Θ commute with the differentials", chain_maps),
        ("n = 3 coincidence of standard and alternate complexes", ternary_coincidence),
        ("representation suite", representation_suite),
        ("abelian extensions: FI iff cocycle, equivalence round trip", abelian_extensions),
        ("generalized derivations and their extensions", generalized_derivations),
        ("n = 2 recovery on sl2", lie_recovery),
        ("spectral sequence: filtration, E₁ two ways, extension cohomology", spectral_sequence),
        ("δ versus d on split cochains", delta_d_identity),
    ];
    let mut failed = 0;
    let mut report = |index: usize, title: &str, findings: Findings, took: Duration| {
        let status = if findings.failures.is_empty() { "PASS" } else { "FAIL" };
        println!(
            "criterion {index:>2} {status}  {title} ({} checks, {} failed, {:.1?})",
            findings.checked,
            findings.failures.len(),
            took
        );
        for msg in findings.failures.iter().take(MAX_LISTED) {
            println!("             - {msg}");
        }
        if findings.failures.len() > MAX_LISTED {
            println!("             - … {} more", findings.failures.len() - MAX_LISTED);
        }
        if !findings.failures.is_empty() {
            failed += 1;
        }
    };
    for (i, (title, run)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let findings = run();
        report(i + 1, title, findings, t.elapsed());
    }
    let t = Instant::now();
    let findings = cli_contract(started);
    report(10, "CLI goldens, exit codes, runtime", findings, t.elapsed());

    if failed > 0 {
        println!("acceptance: {failed} of 10 criteria failed");
        std::process::exit(1);
    }
    println!("acceptance: all 10 criteria pass");
}
