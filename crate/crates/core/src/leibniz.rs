//! Left Leibniz algebras, their representations, and the cochain complex
//! `CL^m(𝔏, V) = Hom(𝔏^{⊗m}, V)`.
//!
//! Also builds the Leibniz structures induced by an n-Lie algebra: the
//! bracket on `Λ^{n-1}L` and its representations on `L`, `Λ^{n-2}L ⊗ V`,
//! `L ⊗ V` and on standard cochains.

use rayon::prelude::*;

use crate::algebra::{NLieAlgebra, Representation};
use crate::cochain::{alt, decode, encode, CochainMap, RowBlock};
use crate::error::{Error, Result};
use crate::linalg::{kernel_basis, sparse_to_dense, Accumulator, EchelonBasis, SparseMatrix, SparseVec};
use crate::multiindex::WedgeBasis;
use crate::scalar::Scalar;
use crate::witness::{Check, Violation};

/// A bilinear bracket on a based space, stored on ordered basis pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeibnizAlgebra {
    dim: usize,
    table: Vec<SparseVec>,
}

impl LeibnizAlgebra {
    pub fn zero(dim: usize) -> Self {
        Self { dim, table: vec![Vec::new(); dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn set_bracket(&mut self, i: usize, j: usize, value: SparseVec) -> Result<()> {
        if let Some(bad) = [i, j].into_iter().chain(value.iter().map(|(k, _)| *k)).find(|&k| k >= self.dim) {
            return Err(Error::OutOfRange(format!("basis index {bad} in a {}-dimensional algebra", self.dim)));
        }
        self.table[i * self.dim + j] = crate::linalg::normalize(value);
        Ok(())
    }

    /// `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        &self.table[i * self.dim + j]
    }

    pub fn bracket(&self, x: &[(usize, Scalar)], y: &[(usize, Scalar)]) -> SparseVec {
        let mut acc = Accumulator::new();
        for (i, a) in x {
            for (j, b) in y {
                acc.add_scaled(self.bracket_basis(*i, *j), &(a * b));
            }
        }
        acc.finish()
    }

    /// `y ↦ [x, y]`.
    pub fn ad_left(&self, x: usize) -> SparseMatrix {
        SparseMatrix::from_col_fn(self.dim, self.dim, |y| self.bracket_basis(x, y).to_vec())
    }

    /// `y ↦ [y, x]`.
    pub fn ad_right(&self, x: usize) -> SparseMatrix {
        SparseMatrix::from_col_fn(self.dim, self.dim, |y| self.bracket_basis(y, x).to_vec())
    }

    fn triples(&self) -> Vec<(usize, usize, usize)> {
        let d = self.dim;
        (0..d * d * d).map(|t| (t / (d * d), (t / d) % d, t % d)).collect()
    }

    fn check_triples<F>(&self, identity: &str, sides: F) -> Check
    where
        F: Fn(usize, usize, usize) -> (SparseVec, SparseVec) + Sync,
    {
        let found = self.triples().into_par_iter().find_map_first(|(x, y, z)| {
            let (lhs, rhs) = sides(x, y, z);
            (lhs != rhs).then(|| {
                Violation::new(
                    identity,
                    vec![vec![x], vec![y], vec![z]],
                    sparse_to_dense(&lhs, self.dim),
                    sparse_to_dense(&rhs, self.dim),
                )
            })
        });
        found.map_or(Ok(()), Err)
    }

    /// `[x,[y,z]] = [[x,y],z] + [y,[x,z]]` on all basis triples.
    pub fn validate_left(&self) -> Check {
        self.check_triples("left Leibniz identity", |x, y, z| {
            let e = |i: usize| vec![(i, Scalar::ONE)];
            let lhs = self.bracket(&e(x), self.bracket_basis(y, z));
            let mut rhs = Accumulator::new();
            rhs.add_scaled(&self.bracket(self.bracket_basis(x, y), &e(z)), &Scalar::ONE);
            rhs.add_scaled(&self.bracket(&e(y), self.bracket_basis(x, z)), &Scalar::ONE);
            (lhs, rhs.finish())
        })
    }

    /// `[[x,y],z] = [[x,z],y] + [x,[y,z]]` on all basis triples.
    pub fn validate_right(&self) -> Check {
        self.check_triples("right Leibniz identity", |x, y, z| {
            let e = |i: usize| vec![(i, Scalar::ONE)];
            let lhs = self.bracket(self.bracket_basis(x, y), &e(z));
            let mut rhs = Accumulator::new();
            rhs.add_scaled(&self.bracket(self.bracket_basis(x, z), &e(y)), &Scalar::ONE);
            rhs.add_scaled(&self.bracket(&e(x), self.bracket_basis(y, z)), &Scalar::ONE);
            (lhs, rhs.finish())
        })
    }

    /// Both the left and the right identity hold.
    pub fn is_symmetric(&self) -> bool {
        self.validate_left().is_ok() && self.validate_right().is_ok()
    }

    /// `D[x,y] = [Dx,y] + [x,Dy]` on all basis pairs.
    pub fn validate_derivation(&self, d: &SparseMatrix) -> Check {
        let dim = self.dim;
        let pairs: Vec<(usize, usize)> = (0..dim * dim).map(|p| (p / dim, p % dim)).collect();
        let found = pairs.into_par_iter().find_map_first(|(x, y)| {
            let e = |i: usize| vec![(i, Scalar::ONE)];
            let lhs = d.mul_sparse_vec(self.bracket_basis(x, y));
            let mut rhs = Accumulator::new();
            rhs.add_scaled(&self.bracket(&d.column(x), &e(y)), &Scalar::ONE);
            rhs.add_scaled(&self.bracket(&e(x), &d.column(y)), &Scalar::ONE);
            let rhs = rhs.finish();
            (lhs != rhs).then(|| {
                Violation::new(
                    "Leibniz derivation rule",
                    vec![vec![x], vec![y]],
                    sparse_to_dense(&lhs, dim),
                    sparse_to_dense(&rhs, dim),
                )
            })
        });
        found.map_or(Ok(()), Err)
    }
}

/// The Leibniz bracket on `Λ^{n-1}L`:
/// `[x, y] = Σ_k y^1∧…∧[x^1,…,x^{n-1},y^k]∧…∧y^{n-1}`.
pub fn induced_leibniz(a: &NLieAlgebra) -> LeibnizAlgebra {
    let w1 = WedgeBasis::new(a.dim(), a.arity() - 1);
    let dim = w1.len();
    let table: Vec<SparseVec> =
        (0..dim * dim).into_par_iter().map(|p| a.act_on_wedge(w1.tuple(p / dim), &w1, p % dim)).collect();
    LeibnizAlgebra { dim, table }
}

/// A pair of left and right actions `λ, ρ: 𝔏 → gl(V)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeibnizRep {
    dim_v: usize,
    lambda: Vec<SparseMatrix>,
    rho: Vec<SparseMatrix>,
}

impl LeibnizRep {
    pub fn new(dim_v: usize, lambda: Vec<SparseMatrix>, rho: Vec<SparseMatrix>) -> Result<Self> {
        if lambda.len() != rho.len() {
            return Err(Error::Dimension(format!("{} left actions but {} right actions", lambda.len(), rho.len())));
        }
        if let Some(m) = lambda.iter().chain(&rho).find(|m| m.rows() != dim_v || m.cols() != dim_v) {
            return Err(Error::Dimension(format!(
                "action matrix {}×{} on a {dim_v}-dimensional space",
                m.rows(),
                m.cols()
            )));
        }
        Ok(Self { dim_v, lambda, rho })
    }

    pub fn zero(algebra_dim: usize, dim_v: usize) -> Self {
        let z = vec![SparseMatrix::zeros(dim_v, dim_v); algebra_dim];
        Self { dim_v, lambda: z.clone(), rho: z }
    }

    /// `λ = ad^L`, `ρ = ad^R`.
    pub fn adjoint(alg: &LeibnizAlgebra) -> Self {
        let d = alg.dim();
        Self {
            dim_v: d,
            lambda: (0..d).map(|x| alg.ad_left(x)).collect(),
            rho: (0..d).map(|x| alg.ad_right(x)).collect(),
        }
    }

    /// A symmetric pair `(λ, -λ)`.
    pub fn symmetric(dim_v: usize, lambda: Vec<SparseMatrix>) -> Self {
        let minus = Scalar::from_int(-1);
        let rho = lambda.iter().map(|m| m.scale(&minus)).collect();
        Self { dim_v, lambda, rho }
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn algebra_dim(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self, x: usize) -> &SparseMatrix {
        &self.lambda[x]
    }

    pub fn rho(&self, x: usize) -> &SparseMatrix {
        &self.rho[x]
    }

    fn combine(ms: &[SparseMatrix], x: &[(usize, Scalar)], dim_v: usize) -> SparseMatrix {
        let mut triplets = Vec::new();
        for (i, c) in x {
            for (r, k, v) in ms[*i].entries() {
                triplets.push((r, k, c * v));
            }
        }
        SparseMatrix::from_triplets(dim_v, dim_v, triplets).expect("indices in range")
    }

    pub fn lambda_of(&self, x: &[(usize, Scalar)]) -> SparseMatrix {
        Self::combine(&self.lambda, x, self.dim_v)
    }

    pub fn rho_of(&self, x: &[(usize, Scalar)]) -> SparseMatrix {
        Self::combine(&self.rho, x, self.dim_v)
    }

    /// Checks the three axioms on all basis pairs `(x, y)`:
    /// `λ[x,y] = [λx, λy]`, `ρ[x,y] = λx ρy − ρy λx`, `ρy ρx = −ρy λx`.
    pub fn validate(&self, alg: &LeibnizAlgebra) -> Check {
        if alg.dim() != self.algebra_dim() {
            return Err(Violation::new(
                "action count matches algebra dimension",
                vec![],
                vec![Scalar::from_int(self.algebra_dim() as i64)],
                vec![Scalar::from_int(alg.dim() as i64)],
            ));
        }
        let d = alg.dim();
        let pairs: Vec<(usize, usize)> = (0..d * d).map(|p| (p / d, p % d)).collect();
        let found = pairs.into_par_iter().find_map_first(|(x, y)| {
            let (lx, ly, rx, ry) = (&self.lambda[x], &self.lambda[y], &self.rho[x], &self.rho[y]);
            let xy = alg.bracket_basis(x, y);
            let checks = [
                ("left action axiom", self.lambda_of(xy), lx.mul(ly).unwrap().sub(&ly.mul(lx).unwrap()).unwrap()),
                ("mixed action axiom", self.rho_of(xy), lx.mul(ry).unwrap().sub(&ry.mul(lx).unwrap()).unwrap()),
                ("right action axiom", ry.mul(rx).unwrap(), ry.mul(lx).unwrap().scale(&Scalar::from_int(-1))),
            ];
            checks.into_iter().find(|(_, l, r)| l != r).map(|(name, l, r)| {
                Violation::new(name, vec![vec![x], vec![y]], l.to_dense().concat(), r.to_dense().concat())
            })
        });
        found.map_or(Ok(()), Err)
    }

    /// `λ(x) + ρ(x) = 0` for every basis element.
    pub fn is_symmetric(&self) -> bool {
        self.lambda.iter().zip(&self.rho).all(|(l, r)| l.add(r).unwrap().is_zero())
    }

    /// `ρ = 0`.
    pub fn is_antisymmetric(&self) -> bool {
        self.rho.iter().all(SparseMatrix::is_zero)
    }

    /// The induced actions on the subspace spanned by `basis`, or an error
    /// if some action leaves it.
    pub fn restrict(&self, basis: &[SparseVec]) -> Result<LeibnizRep> {
        let mut span = EchelonBasis::new(self.dim_v);
        for b in basis {
            if !span.insert(b) {
                return Err(Error::Invalid("restriction basis is linearly dependent".into()));
            }
        }
        let k = basis.len();
        let induce = |m: &SparseMatrix| -> Result<SparseMatrix> {
            let mut cols = Vec::with_capacity(k);
            for b in basis {
                let image = m.mul_sparse_vec(b);
                let coords = span
                    .coordinates(&image)
                    .ok_or_else(|| Error::Invalid("subspace is not invariant under the action".into()))?;
                cols.push(crate::linalg::dense_to_sparse(&coords));
            }
            Ok(SparseMatrix::from_col_fn(k, k, |j| cols[j].clone()))
        };
        let lambda = self.lambda.iter().map(induce).collect::<Result<Vec<_>>>()?;
        let rho = self.rho.iter().map(induce).collect::<Result<Vec<_>>>()?;
        Ok(LeibnizRep { dim_v: k, lambda, rho })
    }
}

/// `λ(x) = ad(x)`, `ρ(x) = −ad(x)` on `L` for the Leibniz algebra `Λ^{n-1}L`.
pub fn fundamental_rep(a: &NLieAlgebra) -> LeibnizRep {
    let w1 = WedgeBasis::new(a.dim(), a.arity() - 1);
    LeibnizRep::symmetric(a.dim(), w1.iter().map(|x| a.ad(x)).collect())
}

/// `V^sym = {v : λ(x)v + ρ(x)v = 0 ∀x}` with its induced actions.
#[derive(Debug, Clone)]
pub struct SymmetricPart {
    pub basis: Vec<SparseVec>,
    pub rep: LeibnizRep,
}

/// Computes `V^sym` as an exact kernel and restricts the actions to it.
pub fn sym_subrep(rep: &LeibnizRep) -> Result<SymmetricPart> {
    let stacked: Vec<SparseMatrix> = rep.lambda.iter().zip(&rep.rho).map(|(l, r)| l.add(r).unwrap()).collect();
    let basis: Vec<SparseVec> = if stacked.is_empty() {
        (0..rep.dim_v).map(|i| vec![(i, Scalar::ONE)]).collect()
    } else {
        let m = SparseMatrix::vstack(&stacked)?;
        kernel_basis(&m).iter().map(|v| crate::linalg::dense_to_sparse(v)).collect()
    };
    let sub = rep.restrict(&basis)?;
    Ok(SymmetricPart { basis, rep: sub })
}

/// The anti-symmetric kernel `V_anti` and the symmetrization `V / V_anti`.
///
/// The quotient is coordinatized by the non-pivot coordinates of an echelon
/// basis of `V_anti`, listed in `complement`.
#[derive(Debug, Clone)]
pub struct Symmetrization {
    pub anti_kernel: Vec<SparseVec>,
    pub complement: Vec<usize>,
    pub rep: LeibnizRep,
}

pub fn antisym_kernel(rep: &LeibnizRep) -> Result<Symmetrization> {
    let dv = rep.dim_v;
    let mut span = EchelonBasis::new(dv);
    let mut anti_kernel = Vec::new();
    for (l, r) in rep.lambda.iter().zip(&rep.rho) {
        let s = l.add(r)?;
        for j in 0..dv {
            let col = s.column(j);
            if span.insert(&col) {
                anti_kernel.push(col);
            }
        }
    }
    let pivots: std::collections::BTreeSet<usize> = span.pivots().collect();
    let complement: Vec<usize> = (0..dv).filter(|i| !pivots.contains(i)).collect();
    let slot: std::collections::HashMap<usize, usize> = complement.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let k = complement.len();
    let induce = |m: &SparseMatrix| -> Result<SparseMatrix> {
        for g in &anti_kernel {
            if !span.residue(&m.mul_sparse_vec(g)).is_empty() {
                return Err(Error::Invalid("anti-symmetric kernel is not invariant under the action".into()));
            }
        }
        Ok(SparseMatrix::from_col_fn(k, k, |j| {
            let image = m.mul_sparse_vec(&[(complement[j], Scalar::ONE)]);
            span.residue(&image).into_iter().map(|(i, c)| (slot[&i], c)).collect()
        }))
    };
    let lambda = rep.lambda.iter().map(induce).collect::<Result<Vec<_>>>()?;
    let rho = rep.rho.iter().map(induce).collect::<Result<Vec<_>>>()?;
    Ok(Symmetrization { anti_kernel, complement, rep: LeibnizRep { dim_v: k, lambda, rho } })
}

/// `[(v,x),(w,y)] = (x▷w + v◁y, [x,y])` on `V ⊕ 𝔏`, with `V` first.
pub fn semidirect_sum_leibniz(alg: &LeibnizAlgebra, rep: &LeibnizRep) -> LeibnizAlgebra {
    let dv = rep.dim_v;
    let dim = dv + alg.dim();
    let mut out = LeibnizAlgebra::zero(dim);
    for i in 0..dim {
        for j in 0..dim {
            let value: SparseVec = match (i < dv, j < dv) {
                (true, true) => Vec::new(),
                (true, false) => rep.rho[j - dv].column(i),
                (false, true) => rep.lambda[i - dv].column(j),
                (false, false) => alg.bracket_basis(i - dv, j - dv).iter().map(|(k, c)| (k + dv, c.clone())).collect(),
            };
            out.table[i * dim + j] = value;
        }
    }
    out
}

/// The Leibniz differential `d: CL^m → CL^{m+1}`:
///
/// `df(x_1..x_{m+1}) = Σ_{i<j} (-1)^i f(…x̂_i…[x_i,x_j]…) + Σ_{k≤m} (-1)^{k+1} x_k▷f(…x̂_k…)
///   + (-1)^{m+1} f(x_1..x_m)◁x_{m+1}`.
pub struct LeibnizDifferential<'a> {
    alg: &'a LeibnizAlgebra,
    rep: &'a LeibnizRep,
    degree: usize,
}

impl<'a> LeibnizDifferential<'a> {
    pub fn new(alg: &'a LeibnizAlgebra, rep: &'a LeibnizRep, degree: usize) -> Self {
        Self { alg, rep, degree }
    }
}

/// Dimension of `CL^m(𝔏, V)`.
pub fn leibniz_cochain_dim(alg_dim: usize, dim_v: usize, m: usize) -> usize {
    alg_dim.pow(m as u32) * dim_v
}

impl CochainMap for LeibnizDifferential<'_> {
    fn source_dim(&self) -> usize {
        leibniz_cochain_dim(self.alg.dim(), self.rep.dim_v, self.degree)
    }

    fn source_width(&self) -> usize {
        self.rep.dim_v
    }

    fn target_args(&self) -> usize {
        self.alg.dim().pow(self.degree as u32 + 1)
    }

    fn target_width(&self) -> usize {
        self.rep.dim_v
    }

    fn block(&self, arg: usize, out: &mut RowBlock) {
        let m = self.degree;
        let d = self.alg.dim();
        let x = decode(arg, &vec![d; m + 1]);
        let radices = vec![d; m];
        let mut rest = Vec::with_capacity(m);
        for i in 0..=m {
            for j in i + 1..=m {
                for (w, c) in self.alg.bracket_basis(x[i], x[j]) {
                    rest.clear();
                    rest.extend(x.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &v)| v));
                    rest[j - 1] = *w;
                    out.eval(&(alt(i + 1) * c), encode(&rest, &radices), 0);
                }
            }
        }
        for k in 0..m {
            rest.clear();
            rest.extend(x.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &v)| v));
            out.act(&alt(k), &self.rep.lambda[x[k]], encode(&rest, &radices), 0);
        }
        out.act(&alt(m + 1), &self.rep.rho[x[m]], encode(&x[..m], &radices), 0);
    }
}

/// `Λ^{n-2}L ⊗ V` as a representation of `Λ^{n-1}L`, coordinate `z · dim_v + v`:
///
/// `x▷(z⊗v) = Σ_k z_1∧…∧[x, z_k]∧…∧z_{n-2} ⊗ v + z ⊗ μ(x)v`,
/// `(z⊗v)◁x = Σ_k (-1)^{n+k} x^1∧…∧x̂^k∧…∧x^{n-1} ⊗ μ(z, x^k)v`.
pub fn rep_on_ln2_tensor_v(r: &Representation) -> LeibnizRep {
    let a = r.algebra();
    let n = a.arity();
    let dv = r.dim_v();
    let w1 = r.wedges();
    let w2 = WedgeBasis::new(a.dim(), n - 2);
    let width = w2.len() * dv;
    let lambda: Vec<SparseMatrix> = (0..w1.len())
        .into_par_iter()
        .map(|x| {
            let xt = w1.tuple(x);
            let mut triplets = Vec::new();
            for z in 0..w2.len() {
                for (z2, c) in a.act_on_wedge(xt, &w2, z) {
                    for v in 0..dv {
                        triplets.push((z2 * dv + v, z * dv + v, c.clone()));
                    }
                }
                for (u, v, c) in r.mu_at(x).entries() {
                    triplets.push((z * dv + u, z * dv + v, c.clone()));
                }
            }
            SparseMatrix::from_triplets(width, width, triplets).expect("indices in range")
        })
        .collect();
    let rho: Vec<SparseMatrix> = (0..w1.len())
        .into_par_iter()
        .map(|x| {
            let xt = w1.tuple(x);
            let mut triplets = Vec::new();
            for k in 0..n - 1 {
                let hat: Vec<usize> = xt.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &v)| v).collect();
                let target = w2.locate(&hat).expect("increasing tuple").0;
                // 1-based k+1
                let sign = alt(n + k + 1);
                for z in 0..w2.len() {
                    let mut args = w2.tuple(z).to_vec();
                    args.push(xt[k]);
                    let Some((m, s)) = r.mu_signed(&args) else { continue };
                    let coeff = sign.clone().signed(s < 0);
                    for (u, v, c) in m.entries() {
                        triplets.push((target * dv + u, z * dv + v, &coeff * c));
                    }
                }
            }
            SparseMatrix::from_triplets(width, width, triplets).expect("indices in range")
        })
        .collect();
    LeibnizRep { dim_v: width, lambda, rho }
}

/// `L ⊗ V` as a representation of `Λ^{n-1}L`, coordinate `z · dim_v + v`:
///
/// `x▷(z⊗v) = [x, z] ⊗ v + z ⊗ μ(x)v`,
/// `(z⊗v)◁x = Σ_k (-1)^k x^k ⊗ μ(z, x^1,…,x̂^k,…,x^{n-1})v`.
pub fn rep_on_l_tensor_v(r: &Representation) -> LeibnizRep {
    let a = r.algebra();
    let n = a.arity();
    let d = a.dim();
    let dv = r.dim_v();
    let w1 = r.wedges();
    let width = d * dv;
    let lambda: Vec<SparseMatrix> = (0..w1.len())
        .into_par_iter()
        .map(|x| {
            let ad = a.ad(w1.tuple(x));
            let mut triplets = Vec::new();
            for (z2, z, c) in ad.entries() {
                for v in 0..dv {
                    triplets.push((z2 * dv + v, z * dv + v, c.clone()));
                }
            }
            for z in 0..d {
                for (u, v, c) in r.mu_at(x).entries() {
                    triplets.push((z * dv + u, z * dv + v, c.clone()));
                }
            }
            SparseMatrix::from_triplets(width, width, triplets).expect("indices in range")
        })
        .collect();
    let rho: Vec<SparseMatrix> = (0..w1.len())
        .into_par_iter()
        .map(|x| {
            let xt = w1.tuple(x);
            let mut triplets = Vec::new();
            for k in 0..n - 1 {
                let sign = alt(k + 1);
                for z in 0..d {
                    let mut args = vec![z];
                    args.extend(xt.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &v)| v));
                    let Some((m, s)) = r.mu_signed(&args) else { continue };
                    let coeff = sign.clone().signed(s < 0);
                    for (u, v, c) in m.entries() {
                        triplets.push((xt[k] * dv + u, z * dv + v, &coeff * c));
                    }
                }
            }
            SparseMatrix::from_triplets(width, width, triplets).expect("indices in range")
        })
        .collect();
    LeibnizRep { dim_v: width, lambda, rho }
}

/// The action `z▷f` of `Λ^{n-1}L` on the standard cochains `C^m(L, V)`,
/// made symmetric by `f◁z = −z▷f`.
///
/// For `m ≥ 1`, `(z▷f)(x_1,…,x_{m-1},y) = μ(z)f(…) − Σ_k f(…,[z,x_k],…) − f(…,[z,y])`;
/// on `C^0 = Λ^{n-2}L ⊗ V` it is the left action of [`rep_on_ln2_tensor_v`].
pub fn rep_on_cochains(r: &Representation, m: usize) -> LeibnizRep {
    if m == 0 {
        let base = rep_on_ln2_tensor_v(r);
        return LeibnizRep::symmetric(base.dim_v, base.lambda);
    }
    let action = CochainAction::new(r, m);
    let lambda: Vec<SparseMatrix> = (0..r.wedges().len()).map(|z| action.for_element(z).matrix()).collect();
    LeibnizRep::symmetric(action.dim(), lambda)
}

/// Degree-`m` standard cochain layout: `m-1` slots of `Λ^{n-1}L`, one of
/// `L`, coefficients in `V`.
pub(crate) struct CochainAction<'a> {
    rep: &'a Representation,
    radices: Vec<usize>,
}

impl<'a> CochainAction<'a> {
    pub(crate) fn new(rep: &'a Representation, m: usize) -> Self {
        let mut radices = vec![rep.wedges().len(); m - 1];
        radices.push(rep.algebra().dim());
        Self { rep, radices }
    }

    fn args(&self) -> usize {
        self.radices.iter().product()
    }

    fn dim(&self) -> usize {
        self.args() * self.rep.dim_v()
    }

    fn for_element(&self, z: usize) -> ElementAction<'_, 'a> {
        ElementAction { outer: self, z }
    }
}

struct ElementAction<'b, 'a> {
    outer: &'b CochainAction<'a>,
    z: usize,
}

impl CochainMap for ElementAction<'_, '_> {
    fn source_dim(&self) -> usize {
        self.outer.dim()
    }

    fn source_width(&self) -> usize {
        self.outer.rep.dim_v()
    }

    fn target_args(&self) -> usize {
        self.outer.args()
    }

    fn target_width(&self) -> usize {
        self.outer.rep.dim_v()
    }

    fn block(&self, arg: usize, out: &mut RowBlock) {
        let r = self.outer.rep;
        let a = r.algebra();
        let w1 = r.wedges();
        let zt = w1.tuple(self.z);
        let radices = &self.outer.radices;
        let labels = decode(arg, radices);
        let last = labels.len() - 1;
        let minus = Scalar::from_int(-1);
        out.act(&Scalar::ONE, r.mu_at(self.z), arg, 0);
        let mut moved = labels.clone();
        for k in 0..last {
            for (w, c) in a.act_on_wedge(zt, w1, labels[k]) {
                moved[k] = w;
                out.eval(&-c, encode(&moved, radices), 0);
            }
            moved[k] = labels[k];
        }
        for (i, c) in a.ad(zt).column(labels[last]) {
            moved[last] = i;
            out.eval(&(&minus * &c), encode(&moved, radices), 0);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::first_nonzero_of_composition;
    fn e(i: usize) -> SparseVec {
        vec![(i, Scalar::ONE)]
    }

    #[test]
    fn induced_bracket_examples() {
        let ab = induced_leibniz(&NLieAlgebra::abelian(3, 4));
        assert_eq!(ab.dim(), 6);
        assert!(ab.table.iter().all(Vec::is_empty));
        let sl2 = NLieAlgebra::sl2();
        let lb = induced_leibniz(&sl2);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(lb.bracket_basis(i, j), sl2.bracket_basis(&[i, j]).as_slice());
            }
        }
    }

    #[test]
    fn induced_brackets_are_left_leibniz() {
        for n in 2..=4 {
            let lb = induced_leibniz(&NLieAlgebra::simple(n));
            assert!(lb.validate_left().is_ok(), "simple({n})");
        }
        assert!(induced_leibniz(&NLieAlgebra::sl2()).is_symmetric());
    }

    #[test]
    fn nilpotent_leibniz_is_left_but_not_right() {
        let mut lb = LeibnizAlgebra::zero(2);
        lb.set_bracket(0, 0, e(1)).unwrap();
        assert!(lb.validate_left().is_ok());
        assert!(LeibnizAlgebra::zero(3).is_symmetric());
    }

    #[test]
    fn adjoint_pairs_and_corruptions() {
        let lb = induced_leibniz(&NLieAlgebra::sl2());
        assert!(LeibnizRep::adjoint(&lb).validate(&lb).is_ok());
        assert!(LeibnizRep::zero(3, 2).validate(&lb).is_ok());
        let mut bad = LeibnizRep::adjoint(&lb);
        bad.rho = bad.lambda.clone();
        assert!(bad.validate(&lb).is_err());
    }

    #[test]
    fn fundamental_rep_is_symmetric_representation() {
        for a in [NLieAlgebra::simple(3), NLieAlgebra::simple(4), NLieAlgebra::abelian(3, 3)] {
            let lb = induced_leibniz(&a);
            let r = fundamental_rep(&a);
            assert!(r.validate(&lb).is_ok());
            assert!(r.is_symmetric());
        }
    }

    #[test]
    fn symmetric_parts_of_symmetric_reps() {
        let a = NLieAlgebra::simple(3);
        let r = fundamental_rep(&a);
        let sym = sym_subrep(&r).unwrap();
        assert_eq!(sym.basis.len(), 4);
        let q = antisym_kernel(&r).unwrap();
        assert!(q.anti_kernel.is_empty());
        assert_eq!(q.rep, r);
    }

    #[test]
    fn antisymmetric_rep_has_trivial_symmetric_part() {
        // λ = ad^L, ρ = 0 is an anti-symmetric representation of sl2
        let lb = induced_leibniz(&NLieAlgebra::sl2());
        let r =
            LeibnizRep::new(3, (0..3).map(|x| lb.ad_left(x)).collect(), vec![SparseMatrix::zeros(3, 3); 3]).unwrap();
        assert!(r.validate(&lb).is_ok());
        assert!(r.is_antisymmetric());
        assert!(sym_subrep(&r).unwrap().basis.is_empty());
        let q = antisym_kernel(&r).unwrap();
        assert_eq!(q.anti_kernel.len(), 3);
        assert_eq!(q.rep.dim_v(), 0);
    }

    #[test]
    fn semidirect_sum_is_leibniz() {
        let a = NLieAlgebra::simple(3);
        let lb = induced_leibniz(&a);
        let sd = semidirect_sum_leibniz(&lb, &fundamental_rep(&a));
        assert_eq!(sd.dim(), 4 + 6);
        assert!(sd.validate_left().is_ok());
        // projection onto 𝔏 intertwines the brackets
        for i in 4..10 {
            for j in 4..10 {
                let proj: SparseVec = sd.bracket_basis(i, j).iter().map(|(k, c)| (k - 4, c.clone())).collect();
                assert_eq!(proj.as_slice(), lb.bracket_basis(i - 4, j - 4));
            }
        }
    }

    #[test]
    fn differential_squares_to_zero() {
        let lb = induced_leibniz(&NLieAlgebra::sl2());
        let r = LeibnizRep::adjoint(&lb);
        for m in 0..=2 {
            let inner = LeibnizDifferential::new(&lb, &r, m).matrix();
            assert_eq!(inner.rows(), leibniz_cochain_dim(3, 3, m + 1));
            let outer = LeibnizDifferential::new(&lb, &r, m + 1);
            assert_eq!(first_nonzero_of_composition(&outer, &inner), None, "m = {m}");
        }
        let triv = LeibnizRep::zero(3, 2);
        assert!(LeibnizDifferential::new(&lb, &triv, 0).matrix().is_zero());
    }

    #[test]
    fn induced_representations_validate() {
        for a in [NLieAlgebra::simple(2), NLieAlgebra::simple(3), NLieAlgebra::simple(4), NLieAlgebra::sl2()] {
            let lb = induced_leibniz(&a);
            for r in [Representation::adjoint(&a), Representation::trivial(&a, 2)] {
                assert!(rep_on_ln2_tensor_v(&r).validate(&lb).is_ok(), "Λ^(n-2) ⊗ V, n = {}", a.arity());
                assert!(rep_on_l_tensor_v(&r).validate(&lb).is_ok(), "L ⊗ V, n = {}", a.arity());
                assert!(rep_on_cochains(&r, 1).validate(&lb).is_ok(), "C^1, n = {}", a.arity());
            }
        }
    }

    #[test]
    fn tensor_representations_agree_for_ternary_brackets() {
        let a = NLieAlgebra::simple(3);
        let r = Representation::adjoint(&a);
        assert_eq!(rep_on_ln2_tensor_v(&r), rep_on_l_tensor_v(&r));
    }

    #[test]
    fn cochain_action_on_trivial_data_is_zero() {
        let a = NLieAlgebra::abelian(3, 3);
        let r = Representation::trivial(&a, 1);
        let rep = rep_on_cochains(&r, 1);
        assert!(rep.lambda.iter().all(SparseMatrix::is_zero));
        assert!(rep.is_symmetric());
    }
}
