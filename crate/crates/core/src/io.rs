//! JSON file formats. Indices are 1-based, rationals are strings, and
//! output is canonical: sorted keys, increasing tuples, lowest terms.

use std::collections::BTreeMap;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::algebra::{NLieAlgebra, Representation};
use crate::complexes::{Complex, ComplexKind};
use crate::error::{Error, Result};
use crate::extensions::GeneralizedDerivation;
use crate::linalg::{SparseMatrix, SparseVec};
use crate::multiindex::{sort_with_sign, WedgeBasis};
use crate::scalar::Scalar;
use crate::spectral::{SubalgebraSpec, SubspaceKind};

/// Pretty JSON with keys sorted at every level.
pub fn to_canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value)?;
    Ok(serde_json::to_string_pretty(&v)? + "\n")
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// A tuple value `args ↦ Σ value[i] e_i`, used for brackets and for maps
/// out of a wedge power.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleEntry {
    pub args: Vec<usize>,
    pub value: BTreeMap<usize, Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub n: usize,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_names: Option<Vec<String>>,
    pub brackets: Vec<TupleEntry>,
}

fn zero_based(args: &[usize], dim: usize, what: &str) -> Result<Vec<usize>> {
    args.iter()
        .map(|&i| {
            if i == 0 || i > dim {
                Err(Error::OutOfRange(format!("{what} index {i} outside 1..={dim}")))
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

fn increasing(args: &[usize], len: usize, what: &str) -> Result<()> {
    if args.len() != len {
        return Err(Error::Dimension(format!("{what} has {} arguments, expected {len}", args.len())));
    }
    if args.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invalid(format!("{what} arguments {args:?} are not strictly increasing")));
    }
    Ok(())
}

fn value_vector(value: &BTreeMap<usize, Scalar>, dim: usize, what: &str) -> Result<SparseVec> {
    let mut out = Vec::new();
    for (&i, c) in value {
        if i == 0 || i > dim {
            return Err(Error::OutOfRange(format!("{what} component {i} outside 1..={dim}")));
        }
        if !c.is_zero() {
            out.push((i - 1, c.clone()));
        }
    }
    Ok(out)
}

fn value_map(v: &[(usize, Scalar)]) -> BTreeMap<usize, Scalar> {
    v.iter().map(|(i, c)| (i + 1, c.clone())).collect()
}

fn entries_to_values(entries: &[TupleEntry], basis: &WedgeBasis, dim: usize, what: &str) -> Result<Vec<SparseVec>> {
    let mut values: Vec<Option<SparseVec>> = vec![None; basis.len()];
    for e in entries {
        increasing(&e.args, basis.degree(), what)?;
        let t = zero_based(&e.args, basis.ambient_dim(), what)?;
        let pos = basis.locate(&t).expect("increasing").0;
        if values[pos].is_some() {
            return Err(Error::Invalid(format!("{what} {:?} given twice", e.args)));
        }
        values[pos] = Some(value_vector(&e.value, dim, what)?);
    }
    Ok(values.into_iter().map(Option::unwrap_or_default).collect())
}

fn values_to_entries(basis: &WedgeBasis, value: impl Fn(usize) -> SparseVec) -> Vec<TupleEntry> {
    (0..basis.len())
        .filter_map(|p| {
            let v = value(p);
            (!v.is_empty())
                .then(|| TupleEntry { args: basis.tuple(p).iter().map(|i| i + 1).collect(), value: value_map(&v) })
        })
        .collect()
}

impl AlgebraFile {
    pub fn to_algebra(&self) -> Result<NLieAlgebra> {
        let mut a = NLieAlgebra::new(self.n, self.dim)?;
        if let Some(names) = &self.basis_names {
            if names.len() != self.dim {
                return Err(Error::Dimension(format!("{} basis names for dimension {}", names.len(), self.dim)));
            }
        }
        let basis = WedgeBasis::new(self.dim, self.n);
        for (pos, v) in entries_to_values(&self.brackets, &basis, self.dim, "bracket")?.into_iter().enumerate() {
            a.set_bracket(basis.tuple(pos), v)?;
        }
        Ok(a)
    }

    pub fn from_algebra(a: &NLieAlgebra) -> Self {
        let basis = WedgeBasis::new(a.dim(), a.arity());
        Self {
            n: a.arity(),
            dim: a.dim(),
            basis_names: None,
            brackets: values_to_entries(&basis, |p| a.bracket_basis(basis.tuple(p))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MuEntry {
    pub args: Vec<usize>,
    pub matrix: Vec<Vec<Scalar>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepFile {
    pub dim_v: usize,
    pub mu: Vec<MuEntry>,
}

impl RepFile {
    pub fn to_rep(&self, a: &NLieAlgebra) -> Result<Representation> {
        let mut r = Representation::trivial(a, self.dim_v);
        let mut seen = std::collections::BTreeSet::new();
        for e in &self.mu {
            increasing(&e.args, a.arity() - 1, "μ")?;
            if !seen.insert(e.args.clone()) {
                return Err(Error::Invalid(format!("μ{:?} given twice", e.args)));
            }
            if e.matrix.len() != self.dim_v || e.matrix.iter().any(|row| row.len() != self.dim_v) {
                return Err(Error::Dimension(format!("μ{:?} is not {}×{}", e.args, self.dim_v, self.dim_v)));
            }
            r.set_mu(&zero_based(&e.args, a.dim(), "μ")?, SparseMatrix::from_dense(&e.matrix))?;
        }
        Ok(r)
    }

    pub fn from_rep(r: &Representation) -> Self {
        let mu = r
            .wedges()
            .iter()
            .enumerate()
            .filter(|(p, _)| !r.mu_at(*p).is_zero())
            .map(|(p, t)| MuEntry { args: t.iter().map(|i| i + 1).collect(), matrix: r.mu_at(p).to_dense() })
            .collect();
        Self { dim_v: r.dim_v(), mu }
    }
}

/// `adjoint`, `trivial:<dim>`, or a path to a [`RepFile`].
pub fn load_rep(spec: &str, a: &NLieAlgebra) -> Result<Representation> {
    if spec == "adjoint" {
        return Ok(Representation::adjoint(a));
    }
    if let Some(d) = spec.strip_prefix("trivial:") {
        let dim = d.parse().map_err(|_| Error::Parse(format!("bad trivial dimension {d:?}")))?;
        return Ok(Representation::trivial(a, dim));
    }
    read_json::<RepFile>(Path::new(spec))?.to_rep(a)
}

/// The last argument of a cochain term: a basis index or a wedge.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LastArg {
    Index(usize),
    Tuple(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainTerm {
    pub x: Vec<Vec<usize>>,
    pub y: LastArg,
    pub value: Vec<Scalar>,
}

/// A standard or alternate cochain by its values on basis arguments;
/// arguments may be given in any order, with the antisymmetry sign applied.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainFile {
    pub complex: ComplexKind,
    pub degree: usize,
    pub terms: Vec<CochainTerm>,
}

impl CochainFile {
    /// Coordinates in the layout of [`Complex::space`].
    pub fn to_vector(&self, rep: &Representation) -> Result<SparseVec> {
        let a = rep.algebra();
        let (n, d, dv) = (a.arity(), a.dim(), rep.dim_v());
        let (wedge_last, m) = match (self.complex, self.degree) {
            (ComplexKind::Standard, 0) | (ComplexKind::Alternate, 1..) => (true, self.degree),
            (ComplexKind::Standard, _) | (ComplexKind::Alternate, 0) => (false, self.degree),
            (kind, _) => {
                return Err(Error::Invalid(format!(
                    "cochain files support standard and alternate complexes, not {kind}"
                )))
            }
        };
        let cx = Complex::new(rep, self.complex)?;
        let space = cx.space(m);
        let w1 = WedgeBasis::new(d, n - 1);
        let w2 = WedgeBasis::new(d, n - 2);
        let slots = m.saturating_sub(1);
        let mut acc = crate::linalg::Accumulator::new();
        for term in &self.terms {
            if term.x.len() != slots {
                return Err(Error::Dimension(format!(
                    "degree {m} needs {slots} wedge arguments, got {}",
                    term.x.len()
                )));
            }
            if term.value.len() != dv {
                return Err(Error::Dimension(format!("value of length {} for dim_v {dv}", term.value.len())));
            }
            let mut labels = Vec::with_capacity(slots + 2);
            let mut negative = false;
            let mut place = |t: &[usize], basis: &WedgeBasis| -> Result<Option<usize>> {
                if t.len() != basis.degree() {
                    return Err(Error::Dimension(format!("wedge {t:?} should have {} entries", basis.degree())));
                }
                let z = zero_based(t, d, "cochain argument")?;
                Ok(sort_with_sign(&z).map(|(s, sign)| {
                    negative ^= sign < 0;
                    basis.locate(&s).expect("sorted").0
                }))
            };
            let mut vanishes = false;
            for x in &term.x {
                match place(x, &w1)? {
                    Some(p) => labels.push(p),
                    None => vanishes = true,
                }
            }
            match (&term.y, wedge_last) {
                (LastArg::Tuple(t), true) => match place(t, &w2)? {
                    Some(p) => labels.push(p),
                    None => vanishes = true,
                },
                (LastArg::Index(i), false) => labels.push(zero_based(&[*i], d, "cochain argument")?[0]),
                _ => return Err(Error::Invalid("last cochain argument has the wrong shape".into())),
            }
            if vanishes {
                continue;
            }
            for (v, c) in term.value.iter().enumerate() {
                labels.push(v);
                acc.add(space.descriptor.encode(&labels), c.clone().signed(negative));
                labels.pop();
            }
        }
        Ok(acc.finish())
    }

    pub fn from_vector(rep: &Representation, kind: ComplexKind, degree: usize, v: &[(usize, Scalar)]) -> Result<Self> {
        let a = rep.algebra();
        let (n, d, dv) = (a.arity(), a.dim(), rep.dim_v());
        let wedge_last = match (kind, degree) {
            (ComplexKind::Standard, 0) | (ComplexKind::Alternate, 1..) => true,
            (ComplexKind::Standard, _) | (ComplexKind::Alternate, 0) => false,
            _ => {
                return Err(Error::Invalid(format!(
                    "cochain files support standard and alternate complexes, not {kind}"
                )))
            }
        };
        let space = Complex::new(rep, kind)?.space(degree);
        let w1 = WedgeBasis::new(d, n - 1);
        let w2 = WedgeBasis::new(d, n - 2);
        let mut grouped: BTreeMap<usize, Vec<Scalar>> = BTreeMap::new();
        for (idx, c) in v {
            grouped.entry(idx / dv).or_insert_with(|| vec![Scalar::ZERO; dv])[idx % dv] = c.clone();
        }
        let one = |t: &[usize]| t.iter().map(|i| i + 1).collect::<Vec<_>>();
        let terms = grouped
            .into_iter()
            .map(|(arg, value)| {
                let labels = space.descriptor.decode(arg * dv);
                let (last, xs) = labels[..labels.len() - 1].split_last().expect("last argument");
                let x = xs.iter().map(|&p| one(w1.tuple(p))).collect();
                let y = if wedge_last { LastArg::Tuple(one(w2.tuple(*last))) } else { LastArg::Index(last + 1) };
                CochainTerm { x, y, value }
            })
            .collect();
        Ok(Self { complex: kind, degree, terms })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubalgebraFile {
    pub indices: Vec<usize>,
    pub kind: SubspaceKind,
}

impl SubalgebraFile {
    pub fn to_spec(&self, a: &NLieAlgebra) -> Result<SubalgebraSpec> {
        SubalgebraSpec::new(a, zero_based(&self.indices, a.dim(), "subalgebra")?, self.kind)
    }
}

/// A linear map `L → L` as a dense matrix acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerivationFile {
    pub matrix: Vec<Vec<Scalar>>,
}

impl DerivationFile {
    pub fn to_matrix(&self, a: &NLieAlgebra) -> Result<SparseMatrix> {
        let d = a.dim();
        if self.matrix.len() != d || self.matrix.iter().any(|r| r.len() != d) {
            return Err(Error::Dimension(format!("derivation matrix must be {d}×{d}")));
        }
        Ok(SparseMatrix::from_dense(&self.matrix))
    }

    pub fn from_matrix(m: &SparseMatrix) -> Self {
        Self { matrix: m.to_dense() }
    }
}

/// A map `D: Λ^{n-1}L → L` by its values on increasing tuples.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenDerivationFile {
    pub values: Vec<TupleEntry>,
}

impl GenDerivationFile {
    pub fn to_derivation(&self, a: &NLieAlgebra) -> Result<GeneralizedDerivation> {
        let basis = WedgeBasis::new(a.dim(), a.arity() - 1);
        GeneralizedDerivation::from_values(a, entries_to_values(&self.values, &basis, a.dim(), "D")?)
    }

    pub fn from_derivation(a: &NLieAlgebra, dd: &GeneralizedDerivation) -> Self {
        let basis = WedgeBasis::new(a.dim(), a.arity() - 1);
        Self { values: values_to_entries(&basis, |p| dd.values()[p].clone()) }
    }
}
