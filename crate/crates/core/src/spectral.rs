//! The decreasing filtration of the standard complex by a coordinate
//! subalgebra `K`, the pages `E₀`, `E₁`, `E₂`, and the comparisons built on
//! them.
//!
//! Filtration degrees count flattened arguments: a degree-`m` basis cochain
//! with `c` of its `(m-1)(n-1)+1` individual arguments in `K` lies in `F_j`
//! exactly when `c ≤ (m-j)(n-1)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{NLieAlgebra, Representation};
use crate::cochain::{alt, decode, encode, CochainMap, RowBlock};
use crate::complexes::{complement_representatives, Complex, ComplexKind};
use crate::error::{Error, Result};
use crate::extensions::{gen_der_extension, is_generalized_derivation, GeneralizedDerivation};
use crate::leibniz::{
    induced_leibniz, leibniz_cochain_dim, rep_on_cochains, LeibnizAlgebra, LeibnizDifferential, LeibnizRep,
};
use crate::linalg::{rank, sparse_to_dense, Accumulator, EchelonBasis, SparseMatrix, SparseVec};
use crate::multiindex::WedgeBasis;
use crate::scalar::Scalar;
use crate::witness::{Check, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SubspaceKind {
    Subalgebra,
    Ideal,
}

/// A subalgebra or ideal spanned by a subset of the basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubalgebraSpec {
    kind: SubspaceKind,
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl SubalgebraSpec {
    /// Validates closure: brackets of `K`-tuples (subalgebra) or of tuples
    /// with some `K` argument (ideal) must land in `K`.
    pub fn new(a: &NLieAlgebra, mut members: Vec<usize>, kind: SubspaceKind) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if let Some(&bad) = members.iter().find(|&&i| i >= a.dim()) {
            return Err(Error::OutOfRange(format!("basis index {} in a {}-dimensional algebra", bad + 1, a.dim())));
        }
        let mut mask = vec![false; a.dim()];
        for &i in &members {
            mask[i] = true;
        }
        let spec = Self { kind, members, mask };
        let tuples = WedgeBasis::new(a.dim(), a.arity());
        for t in tuples.iter() {
            let inside = spec.count(t);
            let required = match kind {
                SubspaceKind::Subalgebra => inside == t.len(),
                SubspaceKind::Ideal => inside > 0,
            };
            if required {
                if let Some((out, _)) = a.bracket_basis(t).into_iter().find(|(i, _)| !spec.mask[*i]) {
                    let args: Vec<usize> = t.iter().map(|i| i + 1).collect();
                    let what = match kind {
                        SubspaceKind::Subalgebra => "a subalgebra",
                        SubspaceKind::Ideal => "an ideal",
                    };
                    return Err(Error::Hypothesis(format!(
                        "not {what}: the bracket of {args:?} has a component on e{}",
                        out + 1
                    )));
                }
            }
        }
        Ok(spec)
    }

    pub fn kind(&self) -> SubspaceKind {
        self.kind
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        self.mask[i]
    }

    /// The basis indices outside `K`, spanning the chosen complement.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.mask.len()).filter(|&i| !self.mask[i]).collect()
    }

    fn count(&self, t: &[usize]) -> usize {
        t.iter().filter(|&&i| self.mask[i]).count()
    }
}

/// For each coordinate of the degree-`m` standard cochains, the number of
/// flattened arguments lying in `K`.
pub fn k_counts(rep: &Representation, spec: &SubalgebraSpec, m: usize) -> Vec<usize> {
    let a = rep.algebra();
    let dv = rep.dim_v();
    if m == 0 {
        let w2 = WedgeBasis::new(a.dim(), a.arity() - 2);
        return w2.iter().flat_map(|z| std::iter::repeat_n(spec.count(z), dv)).collect();
    }
    let w1 = rep.wedges();
    let mut radices = vec![w1.len(); m - 1];
    radices.push(a.dim());
    let args: usize = radices.iter().product();
    (0..args)
        .flat_map(|arg| {
            let labels = decode(arg, &radices);
            let (y, xs) = labels.split_last().expect("at least one slot");
            let c = xs.iter().map(|&x| spec.count(w1.tuple(x))).sum::<usize>() + usize::from(spec.contains(*y));
            std::iter::repeat_n(c, dv)
        })
        .collect()
}

/// The filtration degree of each basis cochain of degree `m`.
pub fn coordinate_levels(rep: &Representation, spec: &SubalgebraSpec, m: usize) -> Vec<usize> {
    let counts = k_counts(rep, spec, m);
    if m == 0 {
        return vec![0; counts.len()];
    }
    let slot = rep.algebra().arity() - 1;
    counts.into_iter().map(|c| m - c.div_ceil(slot)).collect()
}

/// The largest `j` with `f ∈ F_j C^m`; the zero cochain reports `m + 1`.
pub fn filtration_level(rep: &Representation, spec: &SubalgebraSpec, m: usize, f: &[(usize, Scalar)]) -> usize {
    let levels = coordinate_levels(rep, spec, m);
    f.iter().map(|(i, _)| levels[*i]).min().unwrap_or(m + 1)
}

/// `δ F_j C^m ⊆ F_j C^{m+1}` on every basis cochain.
pub fn check_filtration_preserved(rep: &Representation, spec: &SubalgebraSpec, m: usize) -> Result<Check> {
    let cx = Complex::new(rep, ComplexKind::Standard)?;
    let source = coordinate_levels(rep, spec, m);
    let target = coordinate_levels(rep, spec, m + 1);
    let delta = cx.matrix(m);
    let bad = delta.entries().find(|(r, c, _)| target[*r] < source[*c]);
    Ok(match bad {
        None => Ok(()),
        Some((r, c, _)) => Err(Violation::new(
            format!("δ preserves the filtration in degree {m}"),
            vec![vec![c], vec![r]],
            vec![Scalar::from_int(target[r] as i64)],
            vec![Scalar::from_int(source[c] as i64)],
        )),
    })
}

/// One cell `(j, i)` of a page.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PageCell {
    pub j: usize,
    pub i: usize,
    pub dim: usize,
}

/// Dimensions of a page on the window `i + j ≤ bound`; cells outside the
/// window are absent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectralPage {
    pub r: u8,
    pub bound: usize,
    pub cells: Vec<PageCell>,
}

impl SpectralPage {
    pub fn get(&self, j: usize, i: usize) -> Option<usize> {
        self.cells.iter().find(|c| c.j == j && c.i == i).map(|c| c.dim)
    }
}

fn window(bound: usize) -> Vec<(usize, usize)> {
    (0..=bound).flat_map(|m| (0..=m).map(move |j| (j, m - j))).collect()
}

/// `E₀^{j,i} = F_j C^{i+j} / F_{j+1} C^{i+j}`.
pub fn e0_page(rep: &Representation, spec: &SubalgebraSpec, bound: usize) -> SpectralPage {
    let levels: Vec<Vec<usize>> = (0..=bound).map(|m| coordinate_levels(rep, spec, m)).collect();
    let cells = window(bound)
        .into_iter()
        .map(|(j, i)| PageCell { j, i, dim: levels[i + j].iter().filter(|&&l| l == j).count() })
        .collect();
    SpectralPage { r: 0, bound, cells }
}

/// The block of `δ` between the coordinates of filtration degree exactly `j`.
fn graded_block(delta: &SparseMatrix, rows: &[usize], cols: &[usize], j: usize) -> SparseMatrix {
    let index = |levels: &[usize]| -> (Vec<Option<usize>>, usize) {
        let mut next = 0;
        let map = levels
            .iter()
            .map(|&l| {
                (l == j).then(|| {
                    next += 1;
                    next - 1
                })
            })
            .collect();
        (map, next)
    };
    let (rmap, nr) = index(rows);
    let (cmap, nc) = index(cols);
    let triplets = delta.entries().filter_map(|(r, c, v)| Some((rmap[r]?, cmap[c]?, v.clone())));
    SparseMatrix::from_triplets(nr, nc, triplets).expect("indices in range")
}

/// `E₁` as the cohomology of `δ₀` on the associated graded complex.
pub fn e1_graded(rep: &Representation, spec: &SubalgebraSpec, bound: usize) -> Result<SpectralPage> {
    let cx = Complex::new(rep, ComplexKind::Standard)?;
    let levels: Vec<Vec<usize>> = (0..=bound + 1).map(|m| coordinate_levels(rep, spec, m)).collect();
    let deltas: Vec<SparseMatrix> = (0..=bound).map(|m| cx.matrix(m)).collect();
    let cells = window(bound)
        .into_par_iter()
        .map(|(j, i)| {
            let m = i + j;
            let graded = levels[m].iter().filter(|&&l| l == j).count();
            let out = rank(&graded_block(&deltas[m], &levels[m + 1], &levels[m], j));
            let inn = if m > 0 { rank(&graded_block(&deltas[m - 1], &levels[m], &levels[m - 1], j)) } else { 0 };
            PageCell { j, i, dim: graded - out - inn }
        })
        .collect();
    Ok(SpectralPage { r: 1, bound, cells })
}

/// The Leibniz subalgebra `K_{n-1} ⊆ Λ^{n-1}L` on the wedges of `K`
/// vectors, with the positions of those wedges in `Λ^{n-1}L`.
pub fn k_wedge_algebra(a: &NLieAlgebra, spec: &SubalgebraSpec) -> Result<(LeibnizAlgebra, Vec<usize>)> {
    let w1 = WedgeBasis::new(a.dim(), a.arity() - 1);
    let positions: Vec<usize> = (0..w1.len()).filter(|&p| spec.count(w1.tuple(p)) == a.arity() - 1).collect();
    let mut inverse = vec![None; w1.len()];
    for (k, &p) in positions.iter().enumerate() {
        inverse[p] = Some(k);
    }
    let full = induced_leibniz(a);
    let mut sub = LeibnizAlgebra::zero(positions.len());
    for (x, &p) in positions.iter().enumerate() {
        for (y, &q) in positions.iter().enumerate() {
            let value = full
                .bracket_basis(p, q)
                .iter()
                .map(|(w, c)| inverse[*w].map(|k| (k, c.clone())))
                .collect::<Option<SparseVec>>()
                .ok_or_else(|| Error::Hypothesis("K_{n-1} is not closed under the induced bracket".into()))?;
            sub.set_bracket(x, y, value)?;
        }
    }
    Ok((sub, positions))
}

/// Coordinates of `C^j(L, V)` whose arguments all avoid `K`, identifying
/// `C^j(L/K, V)` with the cochains vanishing on `K`.
pub fn quotient_coordinates(rep: &Representation, spec: &SubalgebraSpec, j: usize) -> Vec<usize> {
    k_counts(rep, spec, j).into_iter().enumerate().filter(|(_, c)| *c == 0).map(|(i, _)| i).collect()
}

/// The block of `m` on the coordinates `keep`, which must span an invariant
/// subspace.
fn restrict_coordinates(m: &SparseMatrix, keep: &[usize]) -> Result<SparseMatrix> {
    let mut index = vec![None; m.rows()];
    for (k, &c) in keep.iter().enumerate() {
        index[c] = Some(k);
    }
    let mut triplets = Vec::new();
    for (r, c, v) in m.entries() {
        if index[c].is_none() {
            continue;
        }
        let row = index[r].ok_or_else(|| Error::Invalid("coordinate subspace is not invariant".into()))?;
        triplets.push((row, index[c].unwrap(), v.clone()));
    }
    SparseMatrix::from_triplets(keep.len(), keep.len(), triplets)
}

/// `dim HL^i(𝔏, V)`.
pub fn leibniz_cohomology_dim(alg: &LeibnizAlgebra, rep: &LeibnizRep, i: usize) -> usize {
    let cochains = leibniz_cochain_dim(alg.dim(), rep.dim_v(), i);
    let out = rank(&LeibnizDifferential::new(alg, rep, i).matrix());
    let inn = if i > 0 { rank(&LeibnizDifferential::new(alg, rep, i - 1).matrix()) } else { 0 };
    cochains - out - inn
}

/// `E₁^{j,i}` as `HL^i(K_{n-1}, C^j(L/K, V))` with the cochain action.
pub fn e1_leibniz(rep: &Representation, spec: &SubalgebraSpec, bound: usize) -> Result<SpectralPage> {
    let (kalg, positions) = k_wedge_algebra(rep.algebra(), spec)?;
    let mut cells = Vec::new();
    for j in 0..=bound {
        let full = rep_on_cochains(rep, j);
        let keep = quotient_coordinates(rep, spec, j);
        let lambda =
            positions.iter().map(|&p| restrict_coordinates(full.lambda(p), &keep)).collect::<Result<Vec<_>>>()?;
        let coeff = LeibnizRep::symmetric(keep.len(), lambda);
        let column: Vec<PageCell> = (0..=bound - j)
            .into_par_iter()
            .map(|i| PageCell { j, i, dim: leibniz_cohomology_dim(&kalg, &coeff, i) })
            .collect();
        cells.extend(column);
    }
    cells.sort_by_key(|c| (c.i + c.j, c.j));
    Ok(SpectralPage { r: 1, bound, cells })
}

/// A cell where the two computations of `E₁` disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CellMismatch {
    pub j: usize,
    pub i: usize,
    pub graded: usize,
    pub leibniz: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct E1Comparison {
    pub graded: SpectralPage,
    pub leibniz: SpectralPage,
    pub mismatches: Vec<CellMismatch>,
}

impl E1Comparison {
    pub fn agrees(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// `E₁` both ways, compared cellwise.
pub fn e1_page(rep: &Representation, spec: &SubalgebraSpec, bound: usize) -> Result<E1Comparison> {
    let graded = e1_graded(rep, spec, bound)?;
    let leibniz = e1_leibniz(rep, spec, bound)?;
    let mismatches = graded
        .cells
        .iter()
        .filter_map(|c| {
            let other = leibniz.get(c.j, c.i).expect("same window");
            (other != c.dim).then_some(CellMismatch { j: c.j, i: c.i, graded: c.dim, leibniz: other })
        })
        .collect();
    Ok(E1Comparison { graded, leibniz, mismatches })
}

/// Brackets and actions vanish unless all arguments are in `K` or all are
/// in the complementary coordinate subspace.
pub fn check_commuting_hypothesis(rep: &Representation, spec: &SubalgebraSpec) -> Check {
    let a = rep.algebra();
    let mixed = |t: &[usize]| {
        let c = spec.count(t);
        c > 0 && c < t.len()
    };
    for t in WedgeBasis::new(a.dim(), a.arity()).iter() {
        let b = a.bracket_basis(t);
        if mixed(t) && !b.is_empty() {
            return Err(Violation::new(
                "mixed bracket vanishes",
                vec![t.to_vec()],
                sparse_to_dense(&b, a.dim()),
                vec![Scalar::ZERO; a.dim()],
            ));
        }
    }
    for (pos, t) in rep.wedges().iter().enumerate() {
        if mixed(t) && !rep.mu_at(pos).is_zero() {
            let m = rep.mu_at(pos).to_dense().concat();
            let zeros = vec![Scalar::ZERO; m.len()];
            return Err(Violation::new("mixed action vanishes", vec![t.to_vec()], m, zeros));
        }
    }
    Ok(())
}

/// `L/K` on the complementary basis vectors, in increasing order.
pub fn quotient_algebra(a: &NLieAlgebra, spec: &SubalgebraSpec) -> Result<NLieAlgebra> {
    if spec.kind() != SubspaceKind::Ideal {
        return Err(Error::Hypothesis("the quotient needs an ideal".into()));
    }
    let comp = spec.complement();
    let mut index = vec![None; a.dim()];
    for (k, &i) in comp.iter().enumerate() {
        index[i] = Some(k);
    }
    let mut q = NLieAlgebra::new(a.arity(), comp.len())?;
    for tq in WedgeBasis::new(comp.len(), a.arity()).iter() {
        let t: Vec<usize> = tq.iter().map(|&k| comp[k]).collect();
        let value = a.bracket_basis(&t).into_iter().filter_map(|(i, c)| index[i].map(|k| (k, c))).collect();
        q.set_bracket(tq, value)?;
    }
    Ok(q)
}

/// `(η(z)f)(x_1,…,x_i) = μ(z)f(x) − Σ_k f(…,[z,x_k],…)` on
/// `CL^i(K_{n-1}, V)` for an increasing `(n-1)`-tuple `z` of `L`.
struct EtaAction<'a> {
    rep: &'a Representation,
    z: usize,
    positions: &'a [usize],
    inverse: &'a [Option<usize>],
    degree: usize,
}

impl CochainMap for EtaAction<'_> {
    fn source_dim(&self) -> usize {
        self.target_args() * self.rep.dim_v()
    }

    fn source_width(&self) -> usize {
        self.rep.dim_v()
    }

    fn target_args(&self) -> usize {
        self.positions.len().pow(self.degree as u32)
    }

    fn target_width(&self) -> usize {
        self.rep.dim_v()
    }

    fn block(&self, arg: usize, out: &mut RowBlock) {
        let a = self.rep.algebra();
        let w1 = self.rep.wedges();
        let zt = w1.tuple(self.z);
        let radices = vec![self.positions.len(); self.degree];
        let labels = decode(arg, &radices);
        out.act(&Scalar::ONE, self.rep.mu_at(self.z), arg, 0);
        let mut moved = labels.clone();
        for k in 0..self.degree {
            for (w, c) in a.act_on_wedge(zt, w1, self.positions[labels[k]]) {
                moved[k] = self.inverse[w].expect("K is an ideal");
                out.eval(&-c, encode(&moved, &radices), 0);
            }
            moved[k] = labels[k];
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct E2Report {
    pub page: SpectralPage,
    /// `dim HL^i(K_{n-1}, V)` for `i ≤ bound`.
    pub hl_dims: Vec<usize>,
    /// `η(z)f = d(f_z)` for `z ∈ K_{n-1}` on cocycle representatives.
    pub annihilation: Check,
}

/// `E₂^{j,i} = H^j(L/K, HL^i(K_{n-1}, V))` for an ideal `K` commuting with
/// its complement.
pub fn e2_page(rep: &Representation, spec: &SubalgebraSpec, bound: usize) -> Result<E2Report> {
    if spec.kind() != SubspaceKind::Ideal {
        return Err(Error::Hypothesis("E₂ needs an ideal".into()));
    }
    if let Err(w) = check_commuting_hypothesis(rep, spec) {
        return Err(Error::Hypothesis(format!("{}", w.one_based())));
    }
    let a = rep.algebra();
    let q = quotient_algebra(a, spec)?;
    let comp = spec.complement();
    let (kalg, positions) = k_wedge_algebra(a, spec)?;
    let mut inverse = vec![None; rep.wedges().len()];
    for (k, &p) in positions.iter().enumerate() {
        inverse[p] = Some(k);
    }
    let vrep = LeibnizRep::symmetric(rep.dim_v(), positions.iter().map(|&p| rep.mu_at(p).clone()).collect());
    let dv = rep.dim_v();
    let mut cells = Vec::new();
    let mut hl_dims = Vec::new();
    let mut annihilation = Ok(());
    for i in 0..=bound {
        let current = LeibnizDifferential::new(&kalg, &vrep, i).matrix();
        let previous = (i > 0).then(|| LeibnizDifferential::new(&kalg, &vrep, i - 1).matrix());
        let reps = complement_representatives(&current, previous.as_ref());
        hl_dims.push(reps.len());
        let eta = |z: usize| EtaAction { rep, z, positions: &positions, inverse: &inverse, degree: i };

        if annihilation.is_ok() {
            let block = positions.len().pow(i.saturating_sub(1) as u32) * dv;
            'outer: for (zk, &z) in positions.iter().enumerate() {
                for f in &reps {
                    let lhs = eta(z).apply(f);
                    let rhs = if i == 0 {
                        Vec::new()
                    } else {
                        let fz: SparseVec =
                            f.iter().filter(|(u, _)| u / block == zk).map(|(u, c)| (u % block, c.clone())).collect();
                        LeibnizDifferential::new(&kalg, &vrep, i - 1).apply(&fz)
                    };
                    if lhs != rhs {
                        let len = current.cols();
                        annihilation = Err(Violation::new(
                            format!("η(z)f = d(f_z) in degree {i}"),
                            vec![rep.wedges().tuple(z).to_vec()],
                            sparse_to_dense(&lhs, len),
                            sparse_to_dense(&rhs, len),
                        ));
                        break 'outer;
                    }
                }
            }
        }

        let mut span = EchelonBasis::new(current.cols());
        let mut boundaries = 0;
        if let Some(p) = &previous {
            for col in p.transpose().into_rows() {
                if span.insert(&col) {
                    boundaries += 1;
                }
            }
        }
        for r in &reps {
            span.insert(r);
        }
        let h = reps.len();
        let mut hq = Representation::trivial(&q, h);
        let w1 = rep.wedges();
        for tq in WedgeBasis::new(comp.len(), a.arity() - 1).iter() {
            let t: Vec<usize> = tq.iter().map(|&k| comp[k]).collect();
            let z = w1.locate(&t).expect("increasing tuple").0;
            let action = eta(z);
            let mut cols = Vec::with_capacity(h);
            for r in &reps {
                let image = action.apply(r);
                let coords = span
                    .coordinates(&image)
                    .ok_or_else(|| Error::Hypothesis(format!("η does not preserve cocycles in degree {i}")))?;
                cols.push(crate::linalg::dense_to_sparse(&coords[boundaries..]));
            }
            hq.set_mu(tq, SparseMatrix::from_col_fn(h, h, |c| cols[c].clone()))?;
        }
        if let Err(w) = hq.validate() {
            return Err(Error::Hypothesis(format!("η is not a representation on HL^{i}: {}", w.one_based())));
        }
        let cx = Complex::new(&hq, ComplexKind::Standard)?;
        for j in 0..=bound - i {
            cells.push(PageCell { j, i, dim: cx.cohomology(j, false).dim_h });
        }
    }
    cells.sort_by_key(|c| (c.i + c.j, c.j));
    Ok(E2Report { page: SpectralPage { r: 2, bound, cells }, hl_dims, annihilation })
}

/// The restriction of a representation of a larger algebra to `a`, whose
/// basis is the initial segment of the larger one.
pub fn restrict_representation(rep: &Representation, a: &NLieAlgebra) -> Result<Representation> {
    if rep.algebra().arity() != a.arity() || rep.algebra().dim() < a.dim() {
        return Err(Error::Dimension("representation is not over an extension of the algebra".into()));
    }
    let mut out = Representation::trivial(a, rep.dim_v());
    for t in WedgeBasis::new(a.dim(), a.arity() - 1).iter() {
        out.set_mu(t, rep.mu(t))?;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeComparison {
    pub degree: usize,
    pub extension: usize,
    pub base: usize,
    pub equal: bool,
}

/// `dim H^m(L ⊕_D k, V)` against `dim H^m(L, V)` for `m ≤ m_max`, both by
/// direct rank computations.
pub fn gen_der_ext_cohomology_compare(
    a: &NLieAlgebra,
    dd: &GeneralizedDerivation,
    rep: &Representation,
    m_max: usize,
) -> Result<Vec<DegreeComparison>> {
    let report = is_generalized_derivation(a, dd);
    if !report.all_ok() {
        return Err(Error::Hypothesis("D is not a generalized derivation".into()));
    }
    let ext = gen_der_extension(a, dd);
    if rep.algebra() != &ext {
        return Err(Error::Invalid("representation is not over the generalized derivation extension".into()));
    }
    let base = restrict_representation(rep, a)?;
    let cx_ext = Complex::new(rep, ComplexKind::Standard)?;
    let cx_base = Complex::new(&base, ComplexKind::Standard)?;
    Ok((0..=m_max)
        .map(|m| {
            let extension = cx_ext.cohomology(m, false).dim_h;
            let base = cx_base.cohomology(m, false).dim_h;
            DegreeComparison { degree: m, extension, base, equal: extension == base }
        })
        .collect())
}

/// Both sides of `(δf)_{r+1} = d f_r + (-1)^{r+1} δ(f_{r+1})` for
/// `f ∈ C^{r+s}(L, V)`, `s ≥ 2`, where `f_r ∈ CL^r(Λ^{n-1}L, C^s(L, V))`
/// shares the coordinates of `f`.
pub struct DeltaDComp {
    r: usize,
    full: SparseMatrix,
    leibniz: SparseMatrix,
    inner_t: SparseMatrix,
    inner_width: usize,
    outer_width: usize,
}

impl DeltaDComp {
    pub fn new(rep: &Representation, r: usize, s: usize) -> Result<Self> {
        if s < 2 {
            return Err(Error::Invalid(format!("the identity needs s ≥ 2, got {s}")));
        }
        let cx = Complex::new(rep, ComplexKind::Standard)?;
        let coeff = rep_on_cochains(rep, s);
        let leibniz = LeibnizDifferential::new(cx.leibniz_algebra(), &coeff, r).matrix();
        let inner = cx.matrix(s - 1);
        Ok(Self {
            r,
            full: cx.matrix(r + s),
            leibniz,
            inner_width: inner.cols(),
            outer_width: inner.rows(),
            inner_t: inner.transpose(),
        })
    }

    pub fn source_dim(&self) -> usize {
        self.full.cols()
    }

    /// `((δf)_{r+1}, d f_r + (-1)^{r+1} δ(f_{r+1}))`.
    pub fn sides(&self, f: &[(usize, Scalar)]) -> (SparseVec, SparseVec) {
        let lhs = self.full.mul_sparse_vec(f);
        let mut rhs = Accumulator::new();
        rhs.add_scaled(&self.leibniz.mul_sparse_vec(f), &Scalar::ONE);
        let sign = alt(self.r + 1);
        for (u, c) in f {
            let (block, local) = (u / self.inner_width, u % self.inner_width);
            for (row, v) in self.inner_t.row(local) {
                rhs.add(block * self.outer_width + row, &sign * &(c * v));
            }
        }
        (lhs, rhs.finish())
    }

    pub fn check(&self, f: &[(usize, Scalar)]) -> Check {
        let (lhs, rhs) = self.sides(f);
        if lhs == rhs {
            return Ok(());
        }
        let diff = crate::linalg::axpy(&lhs, &Scalar::from_int(-1), &rhs);
        let at = diff[0].0;
        let value = |v: &[(usize, Scalar)]| v.iter().find(|(i, _)| *i == at).map_or(Scalar::ZERO, |(_, c)| c.clone());
        Err(Violation::new(
            format!("(δf)_{} = d f_{} + (-1)^{} δ f_{}", self.r + 1, self.r, self.r + 1, self.r + 1),
            vec![vec![at]],
            vec![value(&lhs)],
            vec![value(&rhs)],
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::random_vector;
    use crate::complexes::standard_dim;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn closure_is_checked() {
        let a = NLieAlgebra::simple(3);
        assert!(matches!(SubalgebraSpec::new(&a, vec![0, 1, 2], SubspaceKind::Subalgebra), Err(Error::Hypothesis(_))));
        assert!(SubalgebraSpec::new(&a, vec![0, 1], SubspaceKind::Subalgebra).is_ok());
        assert!(SubalgebraSpec::new(&a, vec![], SubspaceKind::Ideal).is_ok());
        assert!(matches!(SubalgebraSpec::new(&a, vec![0], SubspaceKind::Ideal), Err(Error::Hypothesis(_))));
        assert!(matches!(SubalgebraSpec::new(&a, vec![7], SubspaceKind::Ideal), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn filtration_levels() {
        let a = NLieAlgebra::simple(3);
        let r = Representation::adjoint(&a);
        let k = SubalgebraSpec::new(&a, vec![0, 1], SubspaceKind::Subalgebra).unwrap();
        assert_eq!(filtration_level(&r, &k, 2, &[]), 3);
        // x = e3∧e4, y = e3: no argument in K
        let w1 = r.wedges();
        let x = w1.locate(&[2, 3]).unwrap().0;
        let coord = (x * 4 + 2) * 4;
        assert_eq!(filtration_level(&r, &k, 2, &[(coord, Scalar::ONE)]), 2);
        // x = e1∧e2, y = e1: all three arguments in K, threshold (2-j)·2+1
        let x = w1.locate(&[0, 1]).unwrap().0;
        assert_eq!(filtration_level(&r, &k, 2, &[((x * 4) * 4, Scalar::ONE)]), 0);
        // x = e1∧e3, y = e4: one argument in K
        let x = w1.locate(&[0, 2]).unwrap().0;
        assert_eq!(filtration_level(&r, &k, 2, &[((x * 4 + 3) * 4, Scalar::ONE)]), 1);
    }

    #[test]
    fn filtration_is_preserved() {
        let a = NLieAlgebra::simple(3);
        let r = Representation::adjoint(&a);
        let k = SubalgebraSpec::new(&a, vec![0, 1], SubspaceKind::Subalgebra).unwrap();
        for m in 0..=2 {
            assert_eq!(check_filtration_preserved(&r, &k, m).unwrap(), Ok(()));
        }
    }

    #[test]
    fn zero_subalgebra_concentrates_e1() {
        let a = NLieAlgebra::simple(3);
        let r = Representation::trivial(&a, 1);
        let k = SubalgebraSpec::new(&a, vec![], SubspaceKind::Subalgebra).unwrap();
        let cmp = e1_page(&r, &k, 2).unwrap();
        assert!(cmp.agrees(), "{:?}", cmp.mismatches);
        for j in 0..=2 {
            assert_eq!(cmp.graded.get(j, 0), Some(standard_dim(3, 4, 1, j)));
        }
        assert_eq!(cmp.graded.get(0, 1), Some(0));
        assert_eq!(cmp.graded.get(3, 0), None);
    }

    #[test]
    fn e0_counts_every_coordinate_once() {
        let a = NLieAlgebra::simple(3);
        let r = Representation::adjoint(&a);
        let k = SubalgebraSpec::new(&a, vec![2, 3], SubspaceKind::Subalgebra).unwrap();
        let page = e0_page(&r, &k, 2);
        for m in 0..=2 {
            let total: usize = (0..=m).map(|j| page.get(j, m - j).unwrap()).sum();
            assert_eq!(total, standard_dim(3, 4, 4, m));
        }
    }

    #[test]
    fn quotient_by_direct_summand() {
        let a = direct_sum_of_simple3();
        let k = SubalgebraSpec::new(&a, vec![4, 5, 6, 7], SubspaceKind::Ideal).unwrap();
        let q = quotient_algebra(&a, &k).unwrap();
        assert_eq!(q, NLieAlgebra::simple(3));
    }

    fn direct_sum_of_simple3() -> NLieAlgebra {
        let s = NLieAlgebra::simple(3);
        let mut a = NLieAlgebra::new(3, 8).unwrap();
        for (t, v) in s.constants() {
            a.set_bracket(t, v.clone()).unwrap();
            let shifted: Vec<usize> = t.iter().map(|i| i + 4).collect();
            a.set_bracket(&shifted, v.iter().map(|(i, c)| (i + 4, c.clone())).collect()).unwrap();
        }
        a
    }

    #[test]
    fn commuting_hypothesis_witness() {
        let a = NLieAlgebra::simple(3);
        let r = Representation::trivial(&a, 1);
        let mut b = NLieAlgebra::new(3, 4).unwrap();
        b.set_bracket(&[0, 1, 2], vec![(3, Scalar::ONE)]).unwrap();
        let k = SubalgebraSpec::new(&b, vec![3], SubspaceKind::Ideal).unwrap();
        let rb = Representation::trivial(&b, 1);
        assert!(check_commuting_hypothesis(&rb, &k).is_ok());
        let k2 = SubalgebraSpec::new(&b, vec![2, 3], SubspaceKind::Ideal).unwrap();
        assert!(check_commuting_hypothesis(&rb, &k2).is_err());
        assert!(matches!(e2_page(&rb, &k2, 1), Err(Error::Hypothesis(_))));
        let zero = SubalgebraSpec::new(&a, vec![], SubspaceKind::Ideal).unwrap();
        assert!(check_commuting_hypothesis(&r, &zero).is_ok());
    }

    #[test]
    fn zero_ideal_e2_is_cohomology() {
        let a = NLieAlgebra::simple(3);
        let r = Representation::trivial(&a, 1);
        let k = SubalgebraSpec::new(&a, vec![], SubspaceKind::Ideal).unwrap();
        let e2 = e2_page(&r, &k, 2).unwrap();
        let cx = Complex::new(&r, ComplexKind::Standard).unwrap();
        for j in 0..=2 {
            assert_eq!(e2.page.get(j, 0), Some(cx.cohomology(j, false).dim_h));
        }
        assert_eq!(e2.annihilation, Ok(()));
    }

    #[test]
    fn direct_sum_e2() {
        let a = direct_sum_of_simple3();
        let r = Representation::trivial(&a, 1);
        let k = SubalgebraSpec::new(&a, vec![4, 5, 6, 7], SubspaceKind::Ideal).unwrap();
        let e2 = e2_page(&r, &k, 1).unwrap();
        assert_eq!(e2.annihilation, Ok(()));
        assert_eq!(e2.page.get(0, 0), Some(e2.hl_dims[0] * 4));
    }

    #[test]
    fn delta_d_comp_on_random_cochains() {
        let a = NLieAlgebra::simple(3);
        let r = Representation::adjoint(&a);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (rr, s) in [(0, 2), (1, 2)] {
            let id = DeltaDComp::new(&r, rr, s).unwrap();
            for _ in 0..5 {
                let f = random_vector(&mut rng, id.source_dim(), 3);
                assert_eq!(id.check(&f), Ok(()), "r = {rr}, s = {s}");
            }
        }
    }

    #[test]
    fn cohomology_compare_runs() {
        let a = NLieAlgebra::simple(3);
        let dd = GeneralizedDerivation::zero(&a);
        let ext = gen_der_extension(&a, &dd);
        let r = Representation::trivial(&ext, 1);
        let rows = gen_der_ext_cohomology_compare(&a, &dd, &r, 1).unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].base, 4);
        assert_eq!(rows[0].extension, 5);
    }
}
