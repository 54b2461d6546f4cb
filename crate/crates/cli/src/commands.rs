use std::path::Path;

use nlie_core::cochain::random_vector;
use nlie_core::complexes::{complexes_coincide_check, Coincidence, Complex, ComplexKind};
use nlie_core::extensions::{
    abelian_extension, alternating_degree2_embedding, deformations_equivalent, derivation_space, extensions_equivalent,
    gen_der_cocycle_check, gen_der_extension, infinitesimal_deformation_check, inner_derivation_dim, is_derivation,
    is_generalized_derivation, solve_linear_axioms, Axiom, Equivalence,
};
use nlie_core::io::{load_rep, read_json, AlgebraFile, CochainFile, DerivationFile, GenDerivationFile, SubalgebraFile};
use nlie_core::linalg::{dense_to_sparse, kernel_basis, Accumulator, SparseVec};
use nlie_core::spectral::{
    check_filtration_preserved, e0_page, e1_page, e2_page, gen_der_ext_cohomology_compare, DeltaDComp, SubalgebraSpec,
    SubspaceKind,
};
use nlie_core::{Check, Error, NLieAlgebra, Representation, Result, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// A JSON report, whether every check in it passed, and a one-line summary.
pub struct Outcome {
    pub report: Value,
    pub ok: bool,
    pub summary: String,
}

impl Outcome {
    fn new(report: Value, ok: bool, summary: impl Into<String>) -> Self {
        Self { report, ok, summary: summary.into() }
    }

    pub fn violation(report: Value, summary: impl Into<String>) -> Self {
        Self::new(report, false, summary)
    }
}

fn check_json(c: &Check) -> Value {
    match c {
        Ok(()) => json!({ "ok": true }),
        Err(w) => json!({ "ok": false, "violation": w.one_based() }),
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Result<Value> {
    Ok(serde_json::to_value(v)?)
}

fn load_algebra(path: &Path) -> Result<NLieAlgebra> {
    read_json::<AlgebraFile>(path)?.to_algebra()
}

fn load_cochain(path: &Path, rep: &Representation, kind: ComplexKind, degree: usize) -> Result<SparseVec> {
    let file: CochainFile = read_json(path)?;
    if file.complex != kind || file.degree != degree {
        return Err(Error::Invalid(format!(
            "expected a degree-{degree} {kind} cochain, got degree {} {}",
            file.degree, file.complex
        )));
    }
    file.to_vector(rep)
}

fn coordinates(v: &[(usize, Scalar)]) -> Value {
    let map: serde_json::Map<String, Value> =
        v.iter().map(|(i, c)| ((i + 1).to_string(), Value::String(c.to_string()))).collect();
    Value::Object(map)
}

fn cochain_value(rep: &Representation, kind: ComplexKind, degree: usize, v: &[(usize, Scalar)]) -> Result<Value> {
    match kind {
        ComplexKind::Standard | ComplexKind::Alternate => to_value(&CochainFile::from_vector(rep, kind, degree, v)?),
        _ => Ok(coordinates(v)),
    }
}

pub fn validate(algebra: &Path, rep: Option<&str>) -> Result<Outcome> {
    let a = load_algebra(algebra)?;
    let mut checks = vec![("fundamental identity", a.validate_fundamental_identity())];
    if let Some(spec) = rep {
        let r = load_rep(spec, &a)?;
        checks.push(("representation axioms", r.validate()));
        checks.push(("representation identity", r.check_rep_identity()));
    }
    let ok = checks.iter().all(|(_, c)| c.is_ok());
    let report: serde_json::Map<String, Value> = checks.iter().map(|(k, c)| (k.to_string(), check_json(c))).collect();
    let summary = match checks.iter().find(|(_, c)| c.is_err()) {
        None => "all checks pass".to_string(),
        Some((name, Err(w))) => format!("{name} fails: {}", w.one_based()),
        Some(_) => unreachable!(),
    };
    Ok(Outcome::new(json!({ "ok": ok, "checks": report }), ok, summary))
}

pub fn cohomology(algebra: &Path, rep: &str, kind: ComplexKind, degree: usize) -> Result<Outcome> {
    let a = load_algebra(algebra)?;
    let r = load_rep(rep, &a)?;
    let cx = Complex::new(&r, kind)?;
    let report = cx.cohomology(degree, true);
    let reps = report.representatives.iter().map(|v| cochain_value(&r, kind, degree, v)).collect::<Result<Vec<_>>>()?;
    let summary = format!(
        "{kind} degree {degree}: dim C = {}, dim Z = {}, dim B = {}, dim H = {}",
        report.dim_cochains, report.dim_cocycles, report.dim_coboundaries, report.dim_h
    );
    Ok(Outcome::new(
        json!({
            "complex": kind,
            "degree": degree,
            "dim_cochains": report.dim_cochains,
            "dim_Z": report.dim_cocycles,
            "dim_B": report.dim_coboundaries,
            "dim_H": report.dim_h,
            "representatives": reps,
        }),
        true,
        summary,
    ))
}

pub fn check_derivation(algebra: &Path, derivation: &Path) -> Result<Outcome> {
    let a = load_algebra(algebra)?;
    let d = read_json::<DerivationFile>(derivation)?.to_matrix(&a)?;
    let c = is_derivation(&a, &d);
    let summary = if c.is_ok() { "derivation".to_string() } else { "not a derivation".to_string() };
    Ok(Outcome::new(check_json(&c), c.is_ok(), summary))
}

pub fn derivations(algebra: &Path) -> Result<Outcome> {
    let a = load_algebra(algebra)?;
    let basis = derivation_space(&a);
    let inner = inner_derivation_dim(&a);
    let files: Vec<DerivationFile> = basis.iter().map(DerivationFile::from_matrix).collect();
    Ok(Outcome::new(
        json!({ "dim_der": basis.len(), "dim_inner": inner, "basis": to_value(&files)? }),
        true,
        format!("dim Der = {}, dim Inn = {inner}", basis.len()),
    ))
}

pub fn check_gen_derivation(algebra: &Path, derivation: &Path) -> Result<Outcome> {
    let a = load_algebra(algebra)?;
    let dd = read_json::<GenDerivationFile>(derivation)?.to_derivation(&a)?;
    let report = is_generalized_derivation(&a, &dd);
    let cocycle = match gen_der_cocycle_check(&a, &dd) {
        Ok(c) => check_json(&c),
        Err(Error::Hypothesis(msg)) => json!({ "ok": false, "precondition": msg }),
        Err(e) => return Err(e),
    };
    let ok = report.all_ok() && cocycle["ok"] == json!(true);
    let flags = |c: &Check| if c.is_ok() { "ok" } else { "fails" };
    let summary = format!(
        "axiom I {}, axiom II {}, axiom III {}, cocycle {}",
        flags(&report.axiom_i),
        flags(&report.axiom_ii),
        flags(&report.axiom_iii),
        if cocycle["ok"] == json!(true) { "ok" } else { "fails" }
    );
    Ok(Outcome::new(
        json!({
            "axiom_i": check_json(&report.axiom_i),
            "axiom_ii": check_json(&report.axiom_ii),
            "axiom_iii": check_json(&report.axiom_iii),
            "cocycle": cocycle,
        }),
        ok,
        summary,
    ))
}

pub fn gen_derivations(algebra: &Path, axioms: &[String]) -> Result<Outcome> {
    let a = load_algebra(algebra)?;
    let parsed = axioms
        .iter()
        .map(|s| match s.to_ascii_lowercase().as_str() {
            "i" => Ok(Axiom::I),
            "ii" => Ok(Axiom::II),
            other => Err(Error::Parse(format!("unknown linear axiom {other:?}; use i and/or ii"))),
        })
        .collect::<Result<Vec<_>>>()?;
    let family = solve_linear_axioms(&a, &parsed)?;
    let all_iii = family.iter().filter(|dd| nlie_core::extensions::check_axiom(&a, dd, Axiom::III).is_ok()).count();
    let files: Vec<GenDerivationFile> = family.iter().map(|dd| GenDerivationFile::from_derivation(&a, dd)).collect();
    Ok(Outcome::new(
        json!({ "dimension": family.len(), "basis": to_value(&files)?, "basis_members_satisfying_iii": all_iii }),
        true,
        format!("solution space of dimension {}", family.len()),
    ))
}

fn emit_algebra(ext: &NLieAlgebra) -> Result<Outcome> {
    let check = ext.validate_fundamental_identity();
    match &check {
        Ok(()) => Ok(Outcome::new(
            to_value(&AlgebraFile::from_algebra(ext))?,
            true,
            format!("extension of dimension {} satisfies the fundamental identity", ext.dim()),
        )),
        Err(w) => Ok(Outcome::violation(
            json!({ "ok": false, "fundamental_identity": check_json(&check) }),
            format!("extension violates the fundamental identity: {}", w.one_based()),
        )),
    }
}

pub fn extend_abelian(algebra: &Path, rep: &str, cochain: &Path) -> Result<Outcome> {
    let a = load_algebra(algebra)?;
    let r = load_rep(rep, &a)?;
    let f = load_cochain(cochain, &r, ComplexKind::Standard, 2)?;
    emit_algebra(&abelian_extension(&r, &f)?)
}

pub fn extend_gen_der(algebra: &Path, derivation: &Path) -> Result<Outcome> {
    let a = load_algebra(algebra)?;
    let dd = read_json::<GenDerivationFile>(derivation)?.to_derivation(&a)?;
    emit_algebra(&gen_der_extension(&a, &dd))
}

pub fn equivalent(algebra: &Path, rep: &str, f: &Path, g: &Path) -> Result<Outcome> {
    let a = load_algebra(algebra)?;
    let r = load_rep(rep, &a)?;
    let f = load_cochain(f, &r, ComplexKind::Standard, 2)?;
    let g = load_cochain(g, &r, ComplexKind::Standard, 2)?;
    Ok(match extensions_equivalent(&r, &f, &g)? {
        Equivalence::Equivalent { h } => Outcome::new(
            json!({ "equivalent": true, "h": cochain_value(&r, ComplexKind::Standard, 1, &h)? }),
            true,
            "equivalent: δh = f − g",
        ),
        Equivalence::NotEquivalent => {
            Outcome::new(json!({ "equivalent": false }), true, "not equivalent: f − g is not a coboundary")
        }
    })
}

pub fn deform_check(algebra: &Path, eta: &Path, against: Option<&Path>) -> Result<Outcome> {
    let a = load_algebra(algebra)?;
    let r = Representation::adjoint(&a);
    let e1 = load_cochain(eta, &r, ComplexKind::Standard, 2)?;
    let c = infinitesimal_deformation_check(&a, &e1);
    let mut report = json!({ "cocycle": check_json(&c) });
    let mut summary = if c.is_ok() { "infinitesimal deformation".to_string() } else { "not a 2-cocycle".to_string() };
    if let Some(path) = against {
        let e2 = load_cochain(path, &r, ComplexKind::Standard, 2)?;
        match deformations_equivalent(&a, &e1, &e2)? {
            Some(g) => {
                report["equivalent"] = json!(true);
                report["g"] = cochain_value(&r, ComplexKind::Standard, 1, &g)?;
                summary += "; equivalent";
            }
            None => {
                report["equivalent"] = json!(false);
                summary += "; not equivalent";
            }
        }
    }
    Ok(Outcome::new(report, c.is_ok(), summary))
}

fn load_subalgebra(a: &NLieAlgebra, s: &str, kind: SubspaceKind) -> Result<SubalgebraSpec> {
    if s == "last-index" {
        return SubalgebraSpec::new(a, vec![a.dim() - 1], kind);
    }
    if !s.is_empty() && s.split(',').all(|t| t.trim().parse::<usize>().is_ok()) {
        let indices = s.split(',').map(|t| t.trim().parse().expect("checked")).collect();
        return SubalgebraFile { indices, kind }.to_spec(a);
    }
    let file: SubalgebraFile = read_json(Path::new(s))?;
    if file.kind != kind {
        return Err(Error::Invalid(format!("file declares a {:?}, the option asks for a {kind:?}", file.kind)));
    }
    file.to_spec(a)
}

pub fn spectral(algebra: &Path, rep: &str, sub: Option<&str>, ideal: Option<&str>, bound: usize) -> Result<Outcome> {
    let a = load_algebra(algebra)?;
    let r = load_rep(rep, &a)?;
    let spec = match (sub, ideal) {
        (Some(s), None) => load_subalgebra(&a, s, SubspaceKind::Subalgebra)?,
        (None, Some(s)) => load_subalgebra(&a, s, SubspaceKind::Ideal)?,
        _ => return Err(Error::Invalid("give exactly one of --subalgebra and --ideal".into())),
    };
    let filtration: Vec<Value> =
        (0..bound).map(|m| check_filtration_preserved(&r, &spec, m).map(|c| check_json(&c))).collect::<Result<_>>()?;
    let e1 = e1_page(&r, &spec, bound)?;
    let mut ok = filtration.iter().all(|c| c["ok"] == json!(true)) && e1.agrees();
    let mut report = json!({
        "filtration_preserved": filtration,
        "e0": to_value(&e0_page(&r, &spec, bound))?,
        "e1": to_value(&e1)?,
    });
    if spec.kind() == SubspaceKind::Ideal {
        let e2 = e2_page(&r, &spec, bound)?;
        ok &= e2.annihilation.is_ok();
        report["e2"] = json!({
            "page": to_value(&e2.page)?,
            "hl_dims": e2.hl_dims,
            "annihilation": check_json(&e2.annihilation),
        });
    }
    let summary = if e1.agrees() {
        "E₁ agrees cellwise".to_string()
    } else {
        format!("E₁ differs in {} cells", e1.mismatches.len())
    };
    Ok(Outcome::new(report, ok, summary))
}

pub fn compare_complexes(algebra: &Path, rep: &str, degree: usize) -> Result<Outcome> {
    let a = load_algebra(algebra)?;
    let r = load_rep(rep, &a)?;
    let c = complexes_coincide_check(&r, degree);
    let identical = matches!(c, Coincidence::Identical { .. });
    let ok = identical || a.arity() != 3;
    let summary = if identical { "identical".to_string() } else { "different".to_string() };
    Ok(Outcome::new(to_value(&c)?, ok, summary))
}

pub fn compare_extension_cohomology(
    algebra: &Path,
    derivation: &Path,
    rep: &str,
    max_degree: usize,
) -> Result<Outcome> {
    let a = load_algebra(algebra)?;
    let dd = read_json::<GenDerivationFile>(derivation)?.to_derivation(&a)?;
    let ext = gen_der_extension(&a, &dd);
    let r = load_rep(rep, &ext)?;
    let rows = gen_der_ext_cohomology_compare(&a, &dd, &r, max_degree)?;
    let ok = rows.iter().all(|row| row.equal);
    let summary = rows
        .iter()
        .map(|row| format!("H^{}: {} vs {}", row.degree, row.extension, row.base))
        .collect::<Vec<_>>()
        .join(", ");
    Ok(Outcome::new(json!({ "degrees": to_value(&rows)?, "all_equal": ok }), ok, summary))
}

pub fn random_check(algebra: &Path, rep: &str, samples: usize, seed: u64) -> Result<Outcome> {
    let a = load_algebra(algebra)?;
    let r = load_rep(rep, &a)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();

    for (rr, s) in [(0, 2), (1, 2)] {
        let id = DeltaDComp::new(&r, rr, s)?;
        for k in 0..samples {
            let f = random_vector(&mut rng, id.source_dim(), 3);
            if let Err(w) = id.check(&f) {
                failures.push(json!({ "identity": "delta-d", "r": rr, "s": s, "sample": k, "violation": w }));
                break;
            }
        }
    }

    let cx = Complex::new(&r, ComplexKind::Standard)?;
    let d2 = cx.matrix(2);
    let emb = alternating_degree2_embedding(&r);
    let cocycles: Vec<SparseVec> =
        kernel_basis(&d2.mul(&emb)?).iter().map(|v| emb.mul_sparse_vec(&dense_to_sparse(v))).collect();
    let mut agree = 0;
    for k in 0..samples {
        let f = if k % 2 == 0 || cocycles.is_empty() {
            emb.mul_sparse_vec(&random_vector(&mut rng, emb.cols(), 2))
        } else {
            let mut acc = Accumulator::new();
            for z in &cocycles {
                acc.add_scaled(z, &Scalar::from_int(rng.gen_range(-2..=2)));
            }
            acc.finish()
        };
        let fi = abelian_extension(&r, &f)?.validate_fundamental_identity().is_ok();
        let closed = d2.mul_sparse_vec(&f).is_empty();
        if fi == closed {
            agree += 1;
        } else {
            failures.push(json!({ "identity": "extension iff cocycle", "sample": k, "fundamental_identity": fi, "cocycle": closed }));
        }
    }
    let ok = failures.is_empty();
    Ok(Outcome::new(
        json!({ "samples": samples, "seed": seed, "extension_iff_agreements": agree, "failures": failures }),
        ok,
        if ok { format!("{samples} samples per identity, all pass") } else { format!("{} failures", failures.len()) },
    ))
}
