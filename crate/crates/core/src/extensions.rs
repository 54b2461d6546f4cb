//! Derivations and generalized derivations, the extensions they define,
//! abelian extensions by 2-cocycles, and infinitesimal deformations.

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{NLieAlgebra, Representation};
use crate::cochain::{alt, CochainMap};
use crate::complexes::{Complex, ComplexKind};
use crate::error::{Error, Result};
use crate::leibniz::{fundamental_rep, induced_leibniz, semidirect_sum_leibniz};
use crate::linalg::{
    dense_to_sparse, kernel_basis, rank, solve_in_image, sparse_to_dense, Accumulator, SparseMatrix, SparseVec,
};
use crate::multiindex::WedgeBasis;
use crate::scalar::Scalar;
use crate::witness::{Check, Violation};

/// `D[x_1,…,x_n] = Σ_k [x_1,…,D x_k,…,x_n]` on increasing basis tuples.
pub fn is_derivation(a: &NLieAlgebra, d: &SparseMatrix) -> Check {
    let tuples = WedgeBasis::new(a.dim(), a.arity());
    let found = (0..tuples.len()).into_par_iter().find_map_first(|p| {
        let t = tuples.tuple(p);
        let (lhs, rhs) = derivation_sides(a, d, t);
        (lhs != rhs).then(|| {
            Violation::new(
                "derivation rule",
                vec![t.to_vec()],
                sparse_to_dense(&lhs, a.dim()),
                sparse_to_dense(&rhs, a.dim()),
            )
        })
    });
    found.map_or(Ok(()), Err)
}

fn derivation_sides(a: &NLieAlgebra, d: &SparseMatrix, t: &[usize]) -> (SparseVec, SparseVec) {
    let lhs = d.mul_sparse_vec(&a.bracket_basis(t));
    let mut rhs = Accumulator::new();
    let mut args: Vec<SparseVec> = t.iter().map(|&i| vec![(i, Scalar::ONE)]).collect();
    for k in 0..t.len() {
        args[k] = d.column(t[k]);
        let refs: Vec<&[(usize, Scalar)]> = args.iter().map(Vec::as_slice).collect();
        rhs.add_scaled(&a.bracket_sparse(&refs), &Scalar::ONE);
        args[k] = vec![(t[k], Scalar::ONE)];
    }
    (lhs, rhs.finish())
}

/// A basis of `Der(L)`, each derivation as a `dim × dim` matrix.
///
/// Column `r · dim + c` of the constraint matrix is the defect of the
/// elementary map `e_c ↦ e_r`, which is linear in the map.
pub fn derivation_space(a: &NLieAlgebra) -> Vec<SparseMatrix> {
    let d = a.dim();
    let tuples = WedgeBasis::new(d, a.arity());
    let columns: Vec<SparseVec> = (0..d * d)
        .into_par_iter()
        .map(|u| {
            let unit = SparseMatrix::from_triplets(d, d, [(u / d, u % d, Scalar::ONE)]).expect("in range");
            let mut out = Vec::new();
            for (p, t) in tuples.iter().enumerate() {
                let (lhs, rhs) = derivation_sides(a, &unit, t);
                for (i, c) in crate::linalg::axpy(&lhs, &Scalar::from_int(-1), &rhs) {
                    out.push((p * d + i, c));
                }
            }
            out
        })
        .collect();
    let constraints = SparseMatrix::from_col_fn(tuples.len() * d, d * d, |u| columns[u].clone());
    kernel_basis(&constraints)
        .into_iter()
        .map(|v| {
            let triplets = v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(u, c)| (u / d, u % d, c));
            SparseMatrix::from_triplets(d, d, triplets).expect("in range")
        })
        .collect()
}

/// Dimension of the span of the inner derivations `ad(x_1,…,x_{n-1})`.
pub fn inner_derivation_dim(a: &NLieAlgebra) -> usize {
    let w1 = WedgeBasis::new(a.dim(), a.arity() - 1);
    let d = a.dim();
    let rows: Vec<SparseVec> = w1
        .iter()
        .map(|x| a.ad(x).entries().map(|(r, c, v)| (r * d + c, v.clone())).collect::<Vec<_>>())
        .map(crate::linalg::normalize)
        .collect();
    rank(&SparseMatrix::from_rows(d * d, rows))
}

/// A linear map `D: Λ^{n-1}L → L`, stored on increasing tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneralizedDerivation {
    wedges: WedgeBasis,
    values: Vec<SparseVec>,
}

impl GeneralizedDerivation {
    pub fn zero(a: &NLieAlgebra) -> Self {
        let wedges = WedgeBasis::new(a.dim(), a.arity() - 1);
        let values = vec![Vec::new(); wedges.len()];
        Self { wedges, values }
    }

    /// The inner generalized derivation `D(z) = [y, z_1,…,z_{n-1}]`.
    pub fn inner(a: &NLieAlgebra, y: &[(usize, Scalar)]) -> Self {
        let mut d = Self::zero(a);
        for pos in 0..d.wedges.len() {
            let z: Vec<SparseVec> = d.wedges.tuple(pos).iter().map(|&i| vec![(i, Scalar::ONE)]).collect();
            let mut args: Vec<&[(usize, Scalar)]> = vec![y];
            args.extend(z.iter().map(Vec::as_slice));
            d.values[pos] = a.bracket_sparse(&args);
        }
        d
    }

    /// Builds `D` from its values on the increasing tuples, in wedge order.
    pub fn from_values(a: &NLieAlgebra, values: Vec<SparseVec>) -> Result<Self> {
        let mut d = Self::zero(a);
        if values.len() != d.wedges.len() {
            return Err(Error::Dimension(format!(
                "{} values for {} wedge basis elements",
                values.len(),
                d.wedges.len()
            )));
        }
        if values.iter().flatten().any(|(i, _)| *i >= a.dim()) {
            return Err(Error::OutOfRange("generalized derivation value outside the algebra".into()));
        }
        d.values = values.into_iter().map(crate::linalg::normalize).collect();
        Ok(d)
    }

    /// Flattened coordinates `pos · dim + i`.
    fn from_flat(a: &NLieAlgebra, v: &[(usize, Scalar)]) -> Self {
        let mut d = Self::zero(a);
        for (u, c) in v {
            d.values[u / a.dim()].push((u % a.dim(), c.clone()));
        }
        d
    }

    pub fn values(&self) -> &[SparseVec] {
        &self.values
    }

    /// `D(e_{args})` for an arbitrary tuple.
    pub fn eval_basis(&self, args: &[usize]) -> SparseVec {
        match self.wedges.locate(args) {
            Some((pos, s)) => self.values[pos].iter().map(|(i, c)| (*i, c.clone().signed(s < 0))).collect(),
            None => Vec::new(),
        }
    }

    /// `D(z_1,…,z_{n-2}, w)` for a sparse last argument.
    fn eval_last(&self, z: &[usize], w: &[(usize, Scalar)]) -> SparseVec {
        let mut acc = Accumulator::new();
        let mut args = z.to_vec();
        args.push(0);
        for (j, c) in w {
            *args.last_mut().unwrap() = *j;
            acc.add_scaled(&self.eval_basis(&args), c);
        }
        acc.finish()
    }

    /// `D` with `w` substituted into slot `k` of the basis tuple `y`.
    fn eval_substituted(&self, y: &[usize], k: usize, w: &[(usize, Scalar)]) -> SparseVec {
        let mut acc = Accumulator::new();
        let mut args = y.to_vec();
        for (j, c) in w {
            args[k] = *j;
            acc.add_scaled(&self.eval_basis(&args), c);
        }
        acc.finish()
    }

    /// `D^♯(z)(y) = D(z, y)` as a degree-1 alternate cochain with values in
    /// `gl(L)`, flattened `z · dim² + w · dim + v` for the entry `T[w][v]`.
    pub fn d_sharp(&self, a: &NLieAlgebra) -> SparseVec {
        let d = a.dim();
        let w2 = WedgeBasis::new(d, a.arity() - 2);
        let mut out = Vec::new();
        for (z, zt) in w2.iter().enumerate() {
            let mut args = zt.to_vec();
            args.push(0);
            for v in 0..d {
                *args.last_mut().unwrap() = v;
                for (w, c) in self.eval_basis(&args) {
                    out.push((z * d * d + w * d + v, c));
                }
            }
        }
        crate::linalg::normalize(out)
    }

    /// The map `D^♯(z) ∈ gl(L)` for one `(n-2)`-tuple as a matrix.
    pub fn d_sharp_matrix(&self, a: &NLieAlgebra, z: &[usize]) -> SparseMatrix {
        let d = a.dim();
        SparseMatrix::from_col_fn(d, d, |v| {
            let mut args = z.to_vec();
            args.push(v);
            self.eval_basis(&args)
        })
    }
}

/// Which defining identity of a generalized derivation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axiom {
    I,
    II,
    III,
}

/// Per-axiom outcome of [`is_generalized_derivation`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenDerReport {
    pub axiom_i: Check,
    pub axiom_ii: Check,
    pub axiom_iii: Check,
}

impl GenDerReport {
    pub fn all_ok(&self) -> bool {
        self.axiom_i.is_ok() && self.axiom_ii.is_ok() && self.axiom_iii.is_ok()
    }
}

/// The two sides of one axiom on the basis pair `(p, q)`:
///
/// - I: `D(z, [y]) = Σ_k [y_1,…,D(z, y_k),…,y_n]` for `z ∈ Λ^{n-2}`, `y ∈ Λ^n`;
/// - II: `[x, D(y)] + (-1)^n [D(x), y] = Σ_k D(y_1,…,[x, y_k],…,y_{n-1})` for `x, y ∈ Λ^{n-1}`;
/// - III: `D(z, D(y)) = Σ_k D(y_1,…,D(z, y_k),…,y_{n-1})` for `z ∈ Λ^{n-2}`, `y ∈ Λ^{n-1}`.
fn axiom_sides(
    a: &NLieAlgebra,
    dd: &GeneralizedDerivation,
    axiom: Axiom,
    x: &[usize],
    y: &[usize],
) -> (SparseVec, SparseVec) {
    let one = Scalar::ONE;
    match axiom {
        Axiom::I => {
            let lhs = dd.eval_last(x, &a.bracket_basis(y));
            let mut rhs = Accumulator::new();
            let mut args: Vec<SparseVec> = y.iter().map(|&i| vec![(i, one.clone())]).collect();
            for k in 0..y.len() {
                args[k] = dd.eval_last(x, &[(y[k], one.clone())]);
                let refs: Vec<&[(usize, Scalar)]> = args.iter().map(Vec::as_slice).collect();
                rhs.add_scaled(&a.bracket_sparse(&refs), &one);
                args[k] = vec![(y[k], one.clone())];
            }
            (lhs, rhs.finish())
        }
        Axiom::II => {
            let basis = |t: &[usize]| -> Vec<SparseVec> { t.iter().map(|&i| vec![(i, one.clone())]).collect() };
            let mut first = basis(x);
            first.push(dd.eval_basis(y));
            let mut second = vec![dd.eval_basis(x)];
            second.extend(basis(y));
            let refs1: Vec<&[(usize, Scalar)]> = first.iter().map(Vec::as_slice).collect();
            let refs2: Vec<&[(usize, Scalar)]> = second.iter().map(Vec::as_slice).collect();
            let lhs = crate::linalg::axpy(&a.bracket_sparse(&refs1), &alt(a.arity()), &a.bracket_sparse(&refs2));
            let mut rhs = Accumulator::new();
            for k in 0..y.len() {
                let mut t = x.to_vec();
                t.push(y[k]);
                rhs.add_scaled(&dd.eval_substituted(y, k, &a.bracket_basis(&t)), &one);
            }
            (lhs, rhs.finish())
        }
        Axiom::III => {
            let lhs = dd.eval_last(x, &dd.eval_basis(y));
            let mut rhs = Accumulator::new();
            for k in 0..y.len() {
                let inner = dd.eval_last(x, &[(y[k], one.clone())]);
                rhs.add_scaled(&dd.eval_substituted(y, k, &inner), &one);
            }
            (lhs, rhs.finish())
        }
    }
}

fn axiom_domains(a: &NLieAlgebra, axiom: Axiom) -> (WedgeBasis, WedgeBasis) {
    let (d, n) = (a.dim(), a.arity());
    match axiom {
        Axiom::I => (WedgeBasis::new(d, n - 2), WedgeBasis::new(d, n)),
        Axiom::II => (WedgeBasis::new(d, n - 1), WedgeBasis::new(d, n - 1)),
        Axiom::III => (WedgeBasis::new(d, n - 2), WedgeBasis::new(d, n - 1)),
    }
}

/// Checks one axiom on all increasing basis tuples.
pub fn check_axiom(a: &NLieAlgebra, dd: &GeneralizedDerivation, axiom: Axiom) -> Check {
    let (xs, ys) = axiom_domains(a, axiom);
    let pairs: Vec<(usize, usize)> = (0..xs.len()).flat_map(|p| (0..ys.len()).map(move |q| (p, q))).collect();
    let found = pairs.into_par_iter().find_map_first(|(p, q)| {
        let (x, y) = (xs.tuple(p), ys.tuple(q));
        let (lhs, rhs) = axiom_sides(a, dd, axiom, x, y);
        (lhs != rhs).then(|| {
            Violation::new(
                format!("generalized derivation axiom {axiom:?}"),
                vec![x.to_vec(), y.to_vec()],
                sparse_to_dense(&lhs, a.dim()),
                sparse_to_dense(&rhs, a.dim()),
            )
        })
    });
    found.map_or(Ok(()), Err)
}

pub fn is_generalized_derivation(a: &NLieAlgebra, dd: &GeneralizedDerivation) -> GenDerReport {
    GenDerReport {
        axiom_i: check_axiom(a, dd, Axiom::I),
        axiom_ii: check_axiom(a, dd, Axiom::II),
        axiom_iii: check_axiom(a, dd, Axiom::III),
    }
}

/// A basis of the maps `D` satisfying the given linear axioms (I and/or II).
pub fn solve_linear_axioms(a: &NLieAlgebra, axioms: &[Axiom]) -> Result<Vec<GeneralizedDerivation>> {
    if axioms.contains(&Axiom::III) {
        return Err(Error::Invalid("axiom III is quadratic in D and has no linear solution space".into()));
    }
    let d = a.dim();
    let unknowns = GeneralizedDerivation::zero(a).wedges.len() * d;
    let domains: Vec<(Axiom, WedgeBasis, WedgeBasis)> = axioms
        .iter()
        .map(|&ax| {
            let (x, y) = axiom_domains(a, ax);
            (ax, x, y)
        })
        .collect();
    let rows: usize = domains.iter().map(|(_, x, y)| x.len() * y.len() * d).sum();
    let columns: Vec<SparseVec> = (0..unknowns)
        .into_par_iter()
        .map(|u| {
            let unit = GeneralizedDerivation::from_flat(a, &[(u, Scalar::ONE)]);
            let mut out = Vec::new();
            let mut offset = 0;
            for (ax, xs, ys) in &domains {
                for p in 0..xs.len() {
                    for q in 0..ys.len() {
                        let (lhs, rhs) = axiom_sides(a, &unit, *ax, xs.tuple(p), ys.tuple(q));
                        for (i, c) in crate::linalg::axpy(&lhs, &Scalar::from_int(-1), &rhs) {
                            out.push((offset + (p * ys.len() + q) * d + i, c));
                        }
                    }
                }
                offset += xs.len() * ys.len() * d;
            }
            out
        })
        .collect();
    let constraints = SparseMatrix::from_col_fn(rows, unknowns, |u| columns[u].clone());
    Ok(kernel_basis(&constraints).iter().map(|v| GeneralizedDerivation::from_flat(a, &dense_to_sparse(v))).collect())
}

/// `(L, D)` as an `(n-1)`-ary algebra; axiom III is its fundamental identity.
pub fn as_lower_arity_algebra(a: &NLieAlgebra, dd: &GeneralizedDerivation) -> Result<NLieAlgebra> {
    let mut out = NLieAlgebra::new(a.arity() - 1, a.dim())?;
    for (pos, t) in dd.wedges.iter().enumerate() {
        out.set_bracket(t, dd.values[pos].clone())?;
    }
    Ok(out)
}

/// `δ_alt(D^♯)` with coefficients in `gl(L) = Hom(L, L)`, where
/// `μ(x)(T) = −T ∘ ad(x)`.
pub fn d_sharp_coboundary(a: &NLieAlgebra, dd: &GeneralizedDerivation) -> SparseVec {
    let gl = Representation::adjoint(a).hom(a.dim());
    let cx = Complex::new(&gl, ComplexKind::Alternate).expect("alternate complex");
    cx.differential(1).apply(&dd.d_sharp(a))
}

/// Confirms `δ_alt(D^♯) = 0`; a failure of axiom II is reported as a
/// hypothesis error carrying its witness.
pub fn gen_der_cocycle_check(a: &NLieAlgebra, dd: &GeneralizedDerivation) -> Result<Check> {
    if let Err(w) = check_axiom(a, dd, Axiom::II) {
        return Err(Error::Hypothesis(format!("axiom II fails: {}", w.one_based())));
    }
    let image = d_sharp_coboundary(a, dd);
    Ok(match image.first() {
        None => Ok(()),
        Some((i, c)) => Err(Violation::new("δ(D♯) = 0", vec![vec![*i]], vec![c.clone()], vec![Scalar::ZERO])),
    })
}

/// `L ⊕_D k` with `[x_1+α_1,…,x_n+α_n] = [x] + Σ_k (-1)^{k+1} α_k D(x̂_k)`;
/// the new basis vector is last.
pub fn gen_der_extension(a: &NLieAlgebra, dd: &GeneralizedDerivation) -> NLieAlgebra {
    let (n, d) = (a.arity(), a.dim());
    let mut out = NLieAlgebra::abelian(n, d + 1);
    for (t, v) in a.constants() {
        out.set_bracket(t, v.clone()).expect("indices in range");
    }
    for (pos, x) in dd.wedges.iter().enumerate() {
        let mut t = x.to_vec();
        t.push(d);
        let value = dd.values[pos].iter().map(|(i, c)| (*i, c.clone().signed(n % 2 == 0))).collect();
        out.set_bracket(&t, value).expect("indices in range");
    }
    out
}

/// Degree-2 standard cochains that are alternating in all `n` arguments,
/// built from values `g_t ∈ V` on increasing `n`-tuples.
pub fn alternating_degree2(rep: &Representation, values: &[SparseVec]) -> Result<SparseVec> {
    let a = rep.algebra();
    let (n, d, dv) = (a.arity(), a.dim(), rep.dim_v());
    let tuples = WedgeBasis::new(d, n);
    if values.len() != tuples.len() {
        return Err(Error::Dimension(format!("{} values for {} increasing {n}-tuples", values.len(), tuples.len())));
    }
    let w1 = rep.wedges();
    let mut out = Vec::new();
    for (t, g) in tuples.iter().zip(values) {
        for k in 0..n {
            let rest: Vec<usize> = t.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &v)| v).collect();
            let x = w1.locate(&rest).expect("increasing tuple").0;
            let sign = alt(n - 1 - k);
            for (v, c) in g {
                out.push(((x * d + t[k]) * dv + v, &sign * c));
            }
        }
    }
    Ok(crate::linalg::normalize(out))
}

/// The matrix whose columns embed the alternating degree-2 cochains, one
/// column per (increasing `n`-tuple, coefficient index).
pub fn alternating_degree2_embedding(rep: &Representation) -> SparseMatrix {
    let a = rep.algebra();
    let tuples = WedgeBasis::new(a.dim(), a.arity()).len();
    let dv = rep.dim_v();
    let dim = crate::complexes::standard_dim(a.arity(), a.dim(), dv, 2);
    SparseMatrix::from_col_fn(dim, tuples * dv, |c| {
        let mut values = vec![Vec::new(); tuples];
        values[c / dv] = vec![(c % dv, Scalar::ONE)];
        alternating_degree2(rep, &values).expect("matching length")
    })
}

/// `f(x_1,…,x_{n-1}, y)` read off a degree-2 standard cochain.
fn cochain_value(rep: &Representation, f: &[Scalar], t: &[usize]) -> SparseVec {
    let (d, dv) = (rep.algebra().dim(), rep.dim_v());
    let Some((x, s)) = rep.wedges().locate(&t[..t.len() - 1]) else { return Vec::new() };
    let base = (x * d + t[t.len() - 1]) * dv;
    (0..dv).filter(|&v| !f[base + v].is_zero()).map(|v| (v, f[base + v].clone().signed(s < 0))).collect()
}

/// `V_f ⋊ L` on `V ⊕ L` (V first) with
/// `[v_1+x_1,…,v_n+x_n] = Σ_k (-1)^{k+1} μ(x̂_k)v_k + (-1)^{n+1}(f(x_1,…,x_n) + [x_1,…,x_n])`.
///
/// The bracket is stored on increasing tuples; for a cochain that is not
/// alternating this uses `f` on increasing arguments only.
pub fn abelian_extension(rep: &Representation, f: &[(usize, Scalar)]) -> Result<NLieAlgebra> {
    let a = rep.algebra();
    let (n, dv) = (a.arity(), rep.dim_v());
    let dim = crate::complexes::standard_dim(n, a.dim(), dv, 2);
    if f.iter().any(|(i, _)| *i >= dim) {
        return Err(Error::Dimension(format!("degree-2 cochain index beyond {dim}")));
    }
    let fd = sparse_to_dense(f, dim);
    let semi = rep.semidirect_sum();
    let mut out = NLieAlgebra::abelian(n, dv + a.dim());
    let outer = alt(n + 1);
    let tuples = WedgeBasis::new(dv + a.dim(), n);
    for t in tuples.iter() {
        let mut value = semi.bracket_basis(t);
        if t[0] >= dv {
            let x: Vec<usize> = t.iter().map(|i| i - dv).collect();
            let fv: SparseVec = cochain_value(rep, &fd, &x);
            value = crate::linalg::axpy(&value, &Scalar::ONE, &fv);
        }
        out.set_bracket(t, value.into_iter().map(|(i, c)| (i, &outer * &c)).collect())?;
    }
    Ok(out)
}

/// `H(v + x) = v + h(x) + x` as a matrix on `V ⊕ L` (V first).
pub fn extension_isomorphism(rep: &Representation, h: &[(usize, Scalar)]) -> SparseMatrix {
    let (d, dv) = (rep.algebra().dim(), rep.dim_v());
    let mut triplets: Vec<(usize, usize, Scalar)> = (0..dv + d).map(|i| (i, i, Scalar::ONE)).collect();
    for (idx, c) in h {
        // h ∈ C^1 = Hom(L, V), coordinate y · dim_v + v
        triplets.push((idx % dv, dv + idx / dv, c.clone()));
    }
    SparseMatrix::from_triplets(dv + d, dv + d, triplets).expect("indices in range")
}

/// `φ[t] = [φ t_1,…,φ t_n]_to` on all increasing basis tuples of `from`.
pub fn is_homomorphism(from: &NLieAlgebra, to: &NLieAlgebra, phi: &SparseMatrix) -> Check {
    let tuples = WedgeBasis::new(from.dim(), from.arity());
    let found = (0..tuples.len()).into_par_iter().find_map_first(|p| {
        let t = tuples.tuple(p);
        let lhs = phi.mul_sparse_vec(&from.bracket_basis(t));
        let images: Vec<SparseVec> = t.iter().map(|&i| phi.column(i)).collect();
        let refs: Vec<&[(usize, Scalar)]> = images.iter().map(Vec::as_slice).collect();
        let rhs = to.bracket_sparse(&refs);
        (lhs != rhs).then(|| {
            Violation::new(
                "homomorphism",
                vec![t.to_vec()],
                sparse_to_dense(&lhs, to.dim()),
                sparse_to_dense(&rhs, to.dim()),
            )
        })
    });
    found.map_or(Ok(()), Err)
}

/// Solution of an equivalence problem.
#[derive(Debug, Clone, PartialEq)]
pub enum Equivalence {
    /// `δh = f − g`, and `H` carries the `f`-bracket to the `g`-bracket.
    Equivalent { h: SparseVec },
    /// `f − g` is not a coboundary.
    NotEquivalent,
}

/// Decides whether the abelian extensions by the cocycles `f` and `g` are
/// equivalent, returning `h` with `δh = f − g` and checking that
/// `H(v + x) = v + h(x) + x` maps `V_f ⋊ L` onto `V_g ⋊ L`.
pub fn extensions_equivalent(
    rep: &Representation,
    f: &[(usize, Scalar)],
    g: &[(usize, Scalar)],
) -> Result<Equivalence> {
    let cx = Complex::new(rep, ComplexKind::Standard)?;
    let d2 = cx.matrix(2);
    for (name, c) in [("f", f), ("g", g)] {
        if !d2.mul_sparse_vec(c).is_empty() {
            return Err(Error::Hypothesis(format!("{name} is not a 2-cocycle")));
        }
    }
    let diff = crate::linalg::axpy(f, &Scalar::from_int(-1), g);
    let Some(h) = solve_in_image(&cx.matrix(1), &sparse_to_dense(&diff, d2.cols()))? else {
        return Ok(Equivalence::NotEquivalent);
    };
    let h = dense_to_sparse(&h);
    let phi = extension_isomorphism(rep, &h);
    if let Err(w) = is_homomorphism(&abelian_extension(rep, f)?, &abelian_extension(rep, g)?, &phi) {
        return Err(Error::Invalid(format!("solved h does not intertwine the extensions: {}", w.one_based())));
    }
    Ok(Equivalence::Equivalent { h })
}

/// `δη = 0` for a degree-2 cochain with adjoint coefficients.
pub fn infinitesimal_deformation_check(a: &NLieAlgebra, eta: &[(usize, Scalar)]) -> Check {
    let r = Representation::adjoint(a);
    let cx = Complex::new(&r, ComplexKind::Standard).expect("standard complex");
    match cx.differential(2).apply(eta).first() {
        None => Ok(()),
        Some((i, c)) => Err(Violation::new("δη = 0", vec![vec![*i]], vec![c.clone()], vec![Scalar::ZERO])),
    }
}

/// Some `g ∈ C^1(L, L)` with `δg = η₁ − η₂`, if one exists.
pub fn deformations_equivalent(
    a: &NLieAlgebra,
    eta1: &[(usize, Scalar)],
    eta2: &[(usize, Scalar)],
) -> Result<Option<SparseVec>> {
    let r = Representation::adjoint(a);
    let cx = Complex::new(&r, ComplexKind::Standard)?;
    let d1 = cx.matrix(1);
    let diff = crate::linalg::axpy(eta1, &Scalar::from_int(-1), eta2);
    Ok(solve_in_image(&d1, &sparse_to_dense(&diff, d1.rows()))?.map(|g| dense_to_sparse(&g)))
}

/// Checks that `D(y + x) = D(x)` is a derivation of the Leibniz algebra
/// `L ⋊ Λ^{n-1}L` (L first).
pub fn leibniz_derivation_lift_check(a: &NLieAlgebra, dd: &GeneralizedDerivation) -> Check {
    let sd = semidirect_sum_leibniz(&induced_leibniz(a), &fundamental_rep(a));
    let d = a.dim();
    let lift =
        SparseMatrix::from_col_fn(sd.dim(), sd.dim(), |c| if c < d { Vec::new() } else { dd.values[c - d].clone() });
    sd.validate_derivation(&lift)
}
