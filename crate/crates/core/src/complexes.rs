//! The cochain complexes of an n-Lie algebra with coefficients in a
//! representation, the chain maps into Leibniz cochains, and cohomology.
//!
//! Cochain layouts (arguments row-major, last slot fastest, then the
//! coefficient index):
//!
//! | kind      | degree 0         | degree m ≥ 1                          | coefficients      |
//! |-----------|------------------|---------------------------------------|-------------------|
//! | standard  | `Λ^{n-2}L`       | `(Λ^{n-1}L)^{⊗(m-1)} ⊗ L`             | `V`               |
//! | alternate | `L`              | `(Λ^{n-1}L)^{⊗(m-1)} ⊗ Λ^{n-2}L`      | `V`               |
//! | leibniz   | (none)           | `(Λ^{n-1}L)^{⊗m}`                     | `Λ^{n-2}L ⊗ V`    |
//! | lie       | `Λ^0`            | `Λ^m L` (n = 2 only)                  | `V`               |
//!
//! The `(Λ^{n-1}L)` slots are tensor factors, with no antisymmetry across
//! slots: the differentials have Loday–Pirashvili shape and do not preserve
//! alternating cochains.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::Representation;
use crate::cochain::{
    alt, decode, encode, first_difference_of_composition, first_nonzero_of_composition, CochainMap, RowBlock,
};
use crate::error::{Error, Result};
use crate::leibniz::{
    induced_leibniz, rep_on_l_tensor_v, rep_on_ln2_tensor_v, LeibnizAlgebra, LeibnizDifferential, LeibnizRep,
};
use crate::linalg::{dense_to_sparse, kernel_basis, rank, EchelonBasis, SparseMatrix, SparseVec};
use crate::multiindex::{BasisDescriptor, Factor, WedgeBasis};
use crate::scalar::Scalar;
use crate::witness::{Check, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComplexKind {
    Standard,
    Alternate,
    Leibniz,
    Lie,
}

impl fmt::Display for ComplexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComplexKind::Standard => "standard",
            ComplexKind::Alternate => "alternate",
            ComplexKind::Leibniz => "leibniz",
            ComplexKind::Lie => "lie",
        })
    }
}

impl FromStr for ComplexKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(ComplexKind::Standard),
            "alternate" => Ok(ComplexKind::Alternate),
            "leibniz" => Ok(ComplexKind::Leibniz),
            "lie" => Ok(ComplexKind::Lie),
            other => Err(Error::Parse(format!("unknown complex kind `{other}`"))),
        }
    }
}

/// The basis of one cochain space: argument factors followed by
/// coefficient factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CochainSpace {
    pub kind: ComplexKind,
    pub degree: usize,
    pub descriptor: BasisDescriptor,
    pub arg_factors: usize,
}

impl CochainSpace {
    pub fn dim(&self) -> usize {
        self.descriptor.dim()
    }

    /// Radices of the argument slots.
    pub fn radices(&self) -> &[usize] {
        &self.descriptor.factor_dims()[..self.arg_factors]
    }

    pub fn args(&self) -> usize {
        self.radices().iter().product()
    }

    /// Dimension of the coefficient space.
    pub fn width(&self) -> usize {
        self.descriptor.factor_dims()[self.arg_factors..].iter().product()
    }
}

/// A cochain of one of the complexes, as a sparse coordinate vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    pub kind: ComplexKind,
    pub degree: usize,
    pub values: SparseVec,
}

/// Dimensions of cocycles, coboundaries and cohomology in one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CohomologyReport {
    pub kind: ComplexKind,
    pub degree: usize,
    pub dim_cochains: usize,
    pub dim_cocycles: usize,
    pub dim_coboundaries: usize,
    pub dim_h: usize,
    /// Cocycles spanning a complement of the coboundaries.
    #[serde(skip)]
    pub representatives: Vec<SparseVec>,
}

/// One complex of an algebra with coefficients, with its precomputed
/// bracket tables.
pub struct Complex<'a> {
    rep: &'a Representation,
    kind: ComplexKind,
    w1: WedgeBasis,
    w2: WedgeBasis,
    leibniz: LeibnizAlgebra,
    ads: Vec<SparseMatrix>,
    on_w2: Vec<SparseVec>,
    coefficients: Option<LeibnizRep>,
}

impl<'a> Complex<'a> {
    pub fn new(rep: &'a Representation, kind: ComplexKind) -> Result<Self> {
        let a = rep.algebra();
        let n = a.arity();
        if kind == ComplexKind::Lie && n != 2 {
            return Err(Error::Invalid(format!("the Lie complex needs a binary bracket, got arity {n}")));
        }
        let w1 = WedgeBasis::new(a.dim(), n - 1);
        let w2 = WedgeBasis::new(a.dim(), n - 2);
        let leibniz = induced_leibniz(a);
        let ads = w1.iter().map(|x| a.ad(x)).collect();
        let on_w2 = match kind {
            ComplexKind::Alternate => {
                (0..w1.len() * w2.len()).map(|p| a.act_on_wedge(w1.tuple(p / w2.len()), &w2, p % w2.len())).collect()
            }
            _ => Vec::new(),
        };
        let coefficients = (kind == ComplexKind::Leibniz).then(|| rep_on_ln2_tensor_v(rep));
        Ok(Self { rep, kind, w1, w2, leibniz, ads, on_w2, coefficients })
    }

    pub fn kind(&self) -> ComplexKind {
        self.kind
    }

    pub fn representation(&self) -> &Representation {
        self.rep
    }

    /// The induced Leibniz algebra on `Λ^{n-1}L`.
    pub fn leibniz_algebra(&self) -> &LeibnizAlgebra {
        &self.leibniz
    }

    pub fn space(&self, m: usize) -> CochainSpace {
        let a = self.rep.algebra();
        let (n, d, dv) = (a.arity(), a.dim(), self.rep.dim_v());
        let w1 = Factor::Wedge { k: n - 1, dim: d };
        let w2 = Factor::Wedge { k: n - 2, dim: d };
        let l = Factor::Plain { dim: d };
        let v = Factor::Plain { dim: dv };
        let mut factors: Vec<Factor> = match (self.kind, m) {
            (ComplexKind::Standard, 0) => vec![w2],
            (ComplexKind::Alternate, 0) => vec![l],
            (ComplexKind::Standard, _) => [vec![w1; m - 1], vec![l]].concat(),
            (ComplexKind::Alternate, _) => [vec![w1; m - 1], vec![w2]].concat(),
            (ComplexKind::Leibniz, _) => vec![w1; m],
            (ComplexKind::Lie, _) => vec![Factor::Wedge { k: m, dim: d }],
        };
        let arg_factors = factors.len();
        if self.kind == ComplexKind::Leibniz {
            factors.push(w2);
        }
        factors.push(v);
        CochainSpace { kind: self.kind, degree: m, descriptor: BasisDescriptor::new(factors), arg_factors }
    }

    /// `δ: C^m → C^{m+1}` as a row-streaming operator.
    pub fn differential(&self, m: usize) -> Differential<'_, 'a> {
        let lie = (self.kind == ComplexKind::Lie).then(|| {
            let d = self.rep.algebra().dim();
            (WedgeBasis::new(d, m), WedgeBasis::new(d, m + 1))
        });
        Differential { cx: self, source: self.space(m), target: self.space(m + 1), lie }
    }

    pub fn matrix(&self, m: usize) -> SparseMatrix {
        match &self.coefficients {
            Some(c) => LeibnizDifferential::new(&self.leibniz, c, m).matrix(),
            None => self.differential(m).matrix(),
        }
    }

    /// The first nonzero entry `(row, col, value)` of `δ_{m+1} ∘ δ_m`.
    pub fn square_witness(&self, m: usize) -> Option<(usize, usize, Scalar)> {
        let inner = self.matrix(m);
        match &self.coefficients {
            Some(c) => first_nonzero_of_composition(&LeibnizDifferential::new(&self.leibniz, c, m + 1), &inner),
            None => first_nonzero_of_composition(&self.differential(m + 1), &inner),
        }
    }

    /// `δ_{m+1} ∘ δ_m = 0` as an exact matrix identity.
    pub fn check_square_zero(&self, m: usize) -> Check {
        match self.square_witness(m) {
            None => Ok(()),
            Some((r, c, v)) => Err(Violation::new(
                format!("{} differential squares to zero in degree {m}", self.kind),
                vec![vec![r], vec![c]],
                vec![v],
                vec![Scalar::ZERO],
            )),
        }
    }

    /// Cohomology in degree `m`; representatives are computed on request.
    pub fn cohomology(&self, m: usize, with_representatives: bool) -> CohomologyReport {
        let dim_cochains = self.space(m).dim();
        let current = self.matrix(m);
        let previous = (m > 0).then(|| self.matrix(m - 1));
        let dim_cocycles = dim_cochains - rank(&current);
        let dim_coboundaries = previous.as_ref().map_or(0, rank);
        let mut report = CohomologyReport {
            kind: self.kind,
            degree: m,
            dim_cochains,
            dim_cocycles,
            dim_coboundaries,
            dim_h: dim_cocycles - dim_coboundaries,
            representatives: Vec::new(),
        };
        if with_representatives {
            report.representatives = complement_representatives(&current, previous.as_ref());
        }
        report
    }
}

/// Cocycles of `current` forming a basis of a complement of the image of
/// `previous`, chosen greedily from the reduced kernel basis.
pub fn complement_representatives(current: &SparseMatrix, previous: Option<&SparseMatrix>) -> Vec<SparseVec> {
    let mut span = EchelonBasis::new(current.cols());
    if let Some(p) = previous {
        for col in p.transpose().into_rows() {
            span.insert(&col);
        }
    }
    kernel_basis(current).iter().map(|v| dense_to_sparse(v)).filter(|v| span.insert(v)).collect()
}

/// The differential of a standard, alternate or Lie complex in one degree.
pub struct Differential<'c, 'a> {
    cx: &'c Complex<'a>,
    source: CochainSpace,
    target: CochainSpace,
    lie: Option<(WedgeBasis, WedgeBasis)>,
}

impl Differential<'_, '_> {
    /// Degree 0 of the standard and alternate complexes:
    /// `δ(z ⊗ v)(y) = μ(z, y)v` with the `z` slot first.
    fn degree_zero(&self, y: &[usize], out: &mut RowBlock) {
        let r = self.cx.rep;
        let sources = self.source.radices()[0];
        for z in 0..sources {
            let mut args: Vec<usize> = match self.cx.kind {
                ComplexKind::Standard => self.cx.w2.tuple(z).to_vec(),
                _ => vec![z],
            };
            args.extend_from_slice(y);
            if let Some((m, s)) = r.mu_signed(&args) {
                out.act(&Scalar::ONE.signed(s < 0), m, z, 0);
            }
        }
    }

    fn nlie_block(&self, labels: &[usize], out: &mut RowBlock) {
        let cx = self.cx;
        let a = cx.rep.algebra();
        let n = a.arity();
        let m = labels.len() - 1;
        let alternate = cx.kind == ComplexKind::Alternate;
        if m == 0 {
            let y: Vec<usize> = if alternate { cx.w2.tuple(labels[0]).to_vec() } else { vec![labels[0]] };
            return self.degree_zero(&y, out);
        }
        let (x, y) = (&labels[..m], labels[m]);
        let radices = self.source.radices();
        let mut rest: Vec<usize> = Vec::with_capacity(m);
        let drop = |rest: &mut Vec<usize>, i: usize| {
            rest.clear();
            rest.extend(x.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &v)| v));
        };
        // Σ_{i<j} (-1)^i f(…x̂_i…[x_i,x_j]…, y)
        for i in 0..m {
            for j in i + 1..m {
                for (w, c) in cx.leibniz.bracket_basis(x[i], x[j]) {
                    drop(&mut rest, i);
                    rest[j - 1] = *w;
                    rest.push(y);
                    out.eval(&(alt(i + 1) * c), encode(&rest, radices), 0);
                }
            }
        }
        for (i, &xi) in x.iter().enumerate().take(m) {
            // Σ_i (-1)^i f(…x̂_i…, [x_i, y])
            let moved: SparseVec =
                if alternate { cx.on_w2[xi * cx.w2.len() + y].clone() } else { cx.ads[xi].column(y) };
            for (u, c) in &moved {
                drop(&mut rest, i);
                rest.push(*u);
                out.eval(&(alt(i + 1) * c), encode(&rest, radices), 0);
            }
            // Σ_i (-1)^{i+1} μ(x_i) f(…x̂_i…, y)
            drop(&mut rest, i);
            rest.push(y);
            out.act(&alt(i), cx.rep.mu_at(xi), encode(&rest, radices), 0);
        }
        let last = cx.w1.tuple(x[m - 1]);
        rest.clear();
        rest.extend_from_slice(&x[..m - 1]);
        rest.push(0);
        for i in 0..n - 1 {
            let hat: Vec<usize> = last.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &v)| v).collect();
            if alternate {
                // Σ_i (-1)^{m+i+1} μ(x_m^i, y) f(…, X_m^i)
                let mut args = vec![last[i]];
                args.extend_from_slice(cx.w2.tuple(y));
                let Some((mu, s)) = cx.rep.mu_signed(&args) else { continue };
                rest[m - 1] = cx.w2.locate(&hat).expect("increasing tuple").0;
                out.act(&alt(m + i + 2).signed(s < 0), mu, encode(&rest, radices), 0);
            } else {
                // Σ_i (-1)^{n-1+m+i} μ(x_m^1…x̂_m^i…x_m^{n-1}, y) f(…, x_m^i)
                let mut args = hat;
                args.push(y);
                let Some((mu, s)) = cx.rep.mu_signed(&args) else { continue };
                rest[m - 1] = last[i];
                out.act(&alt(n + m + i).signed(s < 0), mu, encode(&rest, radices), 0);
            }
        }
    }

    /// Chevalley–Eilenberg: `Σ_{i<j} (-1)^{i+j} f([X_i,X_j], …) + Σ_k (-1)^k X_k▷f(X̂_k)`
    /// with 0-based positions.
    fn lie_block(&self, arg: usize, out: &mut RowBlock) {
        let a = self.cx.rep.algebra();
        let m = self.source.degree;
        let (source, target) = self.lie.as_ref().expect("lie bases");
        let t = target.tuple(arg);
        let mut args = vec![0; m];
        for i in 0..=m {
            for j in i + 1..=m {
                let rest = t.iter().enumerate().filter(|&(k, _)| k != i && k != j).map(|(_, &v)| v);
                for (slot, v) in args.iter_mut().skip(1).zip(rest) {
                    *slot = v;
                }
                for (u, c) in a.bracket_basis(&[t[i], t[j]]) {
                    args[0] = u;
                    if let Some((pos, s)) = source.locate(&args) {
                        out.eval(&(alt(i + j) * c).signed(s < 0), pos, 0);
                    }
                }
            }
        }
        for k in 0..=m {
            let rest: Vec<usize> = t.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &v)| v).collect();
            let pos = source.locate(&rest).expect("increasing tuple").0;
            out.act(&alt(k), self.cx.rep.mu_at(t[k]), pos, 0);
        }
    }
}

impl CochainMap for Differential<'_, '_> {
    fn source_dim(&self) -> usize {
        self.source.dim()
    }

    fn source_width(&self) -> usize {
        self.source.width()
    }

    fn target_args(&self) -> usize {
        self.target.args()
    }

    fn target_width(&self) -> usize {
        self.target.width()
    }

    fn block(&self, arg: usize, out: &mut RowBlock) {
        match self.cx.kind {
            ComplexKind::Lie => self.lie_block(arg, out),
            ComplexKind::Leibniz => {
                let c = self.cx.coefficients.as_ref().expect("leibniz coefficients");
                LeibnizDifferential::new(&self.cx.leibniz, c, self.source.degree).block(arg, out)
            }
            _ => {
                let labels = decode(arg, self.target.radices());
                self.nlie_block(&labels, out)
            }
        }
    }
}

/// Which of the two chain maps into Leibniz cochains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChainMapKind {
    /// `Δ: C^m(L,V) → CL^m(Λ^{n-1}L, Λ^{n-2}L ⊗ V)`.
    Delta,
    /// `Θ: 𝒞^m(L,V) → CL^m(Λ^{n-1}L, L ⊗ V)`.
    Theta,
}

/// Sign of the degree-0 component of a chain map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DegreeZero {
    /// The sign that makes the degree-0 square commute:
    /// `Δ⁰ = (-1)^{n+1} Id` and `Θ⁰ = Id`.
    Commuting,
    /// `Δ⁰ = Θ⁰ = −Id`.
    NegatedIdentity,
}

/// A chain map together with the Leibniz complex it lands in.
pub struct ChainMap<'a> {
    kind: ChainMapKind,
    zero: DegreeZero,
    source: Complex<'a>,
    coefficients: LeibnizRep,
}

impl<'a> ChainMap<'a> {
    pub fn new(rep: &'a Representation, kind: ChainMapKind, zero: DegreeZero) -> Self {
        let (complex, coefficients) = match kind {
            ChainMapKind::Delta => (ComplexKind::Standard, rep_on_ln2_tensor_v(rep)),
            ChainMapKind::Theta => (ComplexKind::Alternate, rep_on_l_tensor_v(rep)),
        };
        let source = Complex::new(rep, complex).expect("standard and alternate complexes exist for every arity");
        Self { kind, zero, source, coefficients }
    }

    pub fn source(&self) -> &Complex<'a> {
        &self.source
    }

    pub fn target_coefficients(&self) -> &LeibnizRep {
        &self.coefficients
    }

    fn zero_sign(&self) -> Scalar {
        let n = self.source.rep.algebra().arity();
        match (self.zero, self.kind) {
            (DegreeZero::NegatedIdentity, _) => Scalar::from_int(-1),
            (DegreeZero::Commuting, ChainMapKind::Delta) => alt(n + 1),
            (DegreeZero::Commuting, ChainMapKind::Theta) => Scalar::ONE,
        }
    }

    /// The degree-`m` component as a matrix.
    pub fn matrix(&self, m: usize) -> SparseMatrix {
        if m == 0 {
            return SparseMatrix::scalar_identity(self.coefficients.dim_v(), self.zero_sign());
        }
        ChainMapComponent { map: self, source: self.source.space(m) }.matrix()
    }

    /// Compares `Φ^{m+1} ∘ δ_m` with `d_m ∘ Φ^m` exactly.
    pub fn check_square(&self, m: usize) -> Check {
        let lower = self.matrix(m + 1).mul(&self.source.matrix(m)).expect("composable");
        let upper_inner = self.matrix(m);
        let d = LeibnizDifferential::new(&self.source.leibniz, &self.coefficients, m);
        match first_difference_of_composition(&d, &upper_inner, &lower) {
            None => Ok(()),
            Some((r, c, x, y)) => Err(Violation::new(
                format!("{:?} chain map commutes with the differentials in degree {m}", self.kind).to_lowercase(),
                vec![vec![r], vec![c]],
                vec![x],
                vec![y],
            )),
        }
    }
}

struct ChainMapComponent<'m, 'a> {
    map: &'m ChainMap<'a>,
    source: CochainSpace,
}

impl CochainMap for ChainMapComponent<'_, '_> {
    fn source_dim(&self) -> usize {
        self.source.dim()
    }

    fn source_width(&self) -> usize {
        self.source.width()
    }

    fn target_args(&self) -> usize {
        self.map.source.w1.len().pow(self.source.degree as u32)
    }

    fn target_width(&self) -> usize {
        self.map.coefficients.dim_v()
    }

    fn block(&self, arg: usize, out: &mut RowBlock) {
        let cx = &self.map.source;
        let m = self.source.degree;
        let dv = cx.rep.dim_v();
        let x = decode(arg, &vec![cx.w1.len(); m]);
        let last = cx.w1.tuple(x[m - 1]);
        let mut labels = x.clone();
        for (k, &xk) in last.iter().enumerate() {
            let hat: Vec<usize> = last.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &v)| v).collect();
            let hat_pos = cx.w2.locate(&hat).expect("increasing tuple").0;
            match self.map.kind {
                // Σ_k (-1)^k X_m^k ⊗ f(…, x_m^k)
                ChainMapKind::Delta => {
                    labels[m - 1] = xk;
                    out.eval(&alt(k + 1), encode(&labels, self.source.radices()), hat_pos * dv);
                }
                // Σ_k (-1)^{k+1} x_m^k ⊗ f(…, X_m^k)
                ChainMapKind::Theta => {
                    labels[m - 1] = hat_pos;
                    out.eval(&alt(k), encode(&labels, self.source.radices()), xk * dv);
                }
            }
        }
    }
}

/// Outcome of comparing the standard and alternate differentials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Coincidence {
    /// Same spaces and the same matrix entry by entry.
    Identical { rows: usize, cols: usize },
    /// The degree-`m` cochain spaces have different dimensions.
    DimensionMismatch { standard: usize, alternate: usize, which: String },
    /// Same shapes but some entry differs.
    EntryDiffers { row: usize, col: usize, standard: Scalar, alternate: Scalar },
}

/// Compares the degree-`m` standard and alternate differentials under the
/// identification `Λ^{n-2}L = L` available when `n = 3`.
pub fn complexes_coincide_check(rep: &Representation, m: usize) -> Coincidence {
    let std_cx = Complex::new(rep, ComplexKind::Standard).expect("standard complex");
    let alt_cx = Complex::new(rep, ComplexKind::Alternate).expect("alternate complex");
    for (deg, which) in [(m, "domain"), (m + 1, "codomain")] {
        let (s, a) = (std_cx.space(deg).dim(), alt_cx.space(deg).dim());
        if s != a {
            return Coincidence::DimensionMismatch { standard: s, alternate: a, which: which.into() };
        }
    }
    let (s, a) = (std_cx.matrix(m), alt_cx.matrix(m));
    match s.first_difference(&a) {
        None => Coincidence::Identical { rows: s.rows(), cols: s.cols() },
        Some((row, col, standard, alternate)) => Coincidence::EntryDiffers { row, col, standard, alternate },
    }
}

/// Dimension of `C^m` for the standard complex.
pub fn standard_dim(n: usize, d: usize, dim_v: usize, m: usize) -> usize {
    use crate::multiindex::binomial;
    if m == 0 {
        binomial(d, n - 2) * dim_v
    } else {
        binomial(d, n - 1).pow(m as u32 - 1) * d * dim_v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::NLieAlgebra;

    fn fixtures() -> Vec<NLieAlgebra> {
        vec![
            NLieAlgebra::simple(2),
            NLieAlgebra::simple(3),
            NLieAlgebra::simple(4),
            NLieAlgebra::sl2(),
            NLieAlgebra::abelian(3, 4),
        ]
    }

    #[test]
    fn abelian_zero_action_gives_zero_differentials() {
        let a = NLieAlgebra::abelian(3, 4);
        let r = Representation::trivial(&a, 2);
        for kind in [ComplexKind::Standard, ComplexKind::Alternate, ComplexKind::Leibniz] {
            let cx = Complex::new(&r, kind).unwrap();
            for m in 0..=2 {
                assert!(cx.matrix(m).is_zero(), "{kind} degree {m}");
                let h = cx.cohomology(m, false);
                assert_eq!(h.dim_h, h.dim_cochains);
            }
        }
    }

    #[test]
    fn cochain_dimensions() {
        let a = NLieAlgebra::simple(4);
        let r = Representation::trivial(&a, 1);
        let alt_cx = Complex::new(&r, ComplexKind::Alternate).unwrap();
        assert_eq!(alt_cx.space(1).dim(), 10);
        let std_cx = Complex::new(&r, ComplexKind::Standard).unwrap();
        for m in 0..=3 {
            assert_eq!(std_cx.space(m).dim(), standard_dim(4, 5, 1, m));
        }
        let lb = Complex::new(&r, ComplexKind::Leibniz).unwrap();
        assert_eq!(lb.space(2).dim(), 10 * 10 * 10);
    }

    #[test]
    fn lie_complex_requires_binary_bracket() {
        let a = NLieAlgebra::simple(3);
        let r = Representation::adjoint(&a);
        assert!(Complex::new(&r, ComplexKind::Lie).is_err());
    }

    #[test]
    fn differentials_square_to_zero_on_fixtures() {
        for a in fixtures() {
            for r in [Representation::adjoint(&a), Representation::trivial(&a, 1)] {
                let mut kinds = vec![ComplexKind::Standard, ComplexKind::Alternate, ComplexKind::Leibniz];
                if a.arity() == 2 {
                    kinds.push(ComplexKind::Lie);
                }
                for kind in kinds {
                    let cx = Complex::new(&r, kind).unwrap();
                    for m in 0..=1 {
                        assert_eq!(cx.check_square_zero(m), Ok(()), "{kind}, n = {}, m = {m}", a.arity());
                    }
                }
            }
        }
    }

    #[test]
    fn chain_map_squares_commute() {
        for a in fixtures() {
            let r = Representation::adjoint(&a);
            for kind in [ChainMapKind::Delta, ChainMapKind::Theta] {
                let map = ChainMap::new(&r, kind, DegreeZero::Commuting);
                for m in 0..=1 {
                    assert_eq!(map.check_square(m), Ok(()), "{kind:?}, n = {}, m = {m}", a.arity());
                }
            }
        }
    }

    #[test]
    fn negated_identity_in_degree_zero() {
        for n in 2..=4 {
            let a = NLieAlgebra::simple(n);
            let r = Representation::adjoint(&a);
            let delta = ChainMap::new(&r, ChainMapKind::Delta, DegreeZero::NegatedIdentity);
            assert_eq!(delta.check_square(0).is_ok(), n % 2 == 0, "Δ, n = {n}");
            assert_eq!(
                delta.matrix(0),
                SparseMatrix::scalar_identity(delta.target_coefficients().dim_v(), Scalar::from_int(-1))
            );
            let theta = ChainMap::new(&r, ChainMapKind::Theta, DegreeZero::NegatedIdentity);
            assert!(theta.check_square(0).is_err(), "Θ, n = {n}");
            assert!(theta.check_square(1).is_ok());
        }
    }

    #[test]
    fn ternary_complexes_coincide() {
        let a = NLieAlgebra::simple(3);
        let r = Representation::adjoint(&a);
        for m in 0..=2 {
            assert!(matches!(complexes_coincide_check(&r, m), Coincidence::Identical { .. }), "m = {m}");
        }
        let r4 = Representation::adjoint(&NLieAlgebra::simple(4));
        assert_eq!(
            complexes_coincide_check(&r4, 1),
            Coincidence::DimensionMismatch { standard: 25, alternate: 50, which: "domain".into() }
        );
    }

    #[test]
    fn sl2_adjoint_has_no_first_cohomology() {
        let a = NLieAlgebra::sl2();
        let r = Representation::adjoint(&a);
        let cx = Complex::new(&r, ComplexKind::Lie).unwrap();
        let h = cx.cohomology(1, true);
        assert_eq!(h.dim_h, 0);
        assert_eq!(h.dim_cocycles, 3);
        assert!(h.representatives.is_empty());
    }

    #[test]
    fn representatives_are_independent_cocycles() {
        let a = NLieAlgebra::simple(3);
        let r = Representation::trivial(&a, 1);
        let cx = Complex::new(&r, ComplexKind::Standard).unwrap();
        for m in 0..=2 {
            let h = cx.cohomology(m, true);
            assert_eq!(h.representatives.len(), h.dim_h);
            let d = cx.matrix(m);
            for v in &h.representatives {
                assert!(d.mul_sparse_vec(v).is_empty());
            }
        }
    }
}
