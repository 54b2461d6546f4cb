//! n-Lie algebras given by structure constants, their representations,
//! and exhaustive validators for the defining identities.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{sparse_to_dense, Accumulator, SparseMatrix, SparseVec};
use crate::multiindex::WedgeBasis;
use crate::scalar::Scalar;
use crate::witness::{Check, Violation};

/// A totally antisymmetric `n`-ary bracket on a `dim`-dimensional space.
///
/// Only increasing index tuples are stored; the fundamental identity is
/// not enforced (see [`NLieAlgebra::validate_fundamental_identity`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NLieAlgebra {
    n: usize,
    dim: usize,
    tuples: WedgeBasis,
    consts: Vec<SparseVec>,
}

impl NLieAlgebra {
    /// The zero bracket of arity `n` on a `dim`-dimensional space.
    pub fn new(n: usize, dim: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid(format!("arity must be at least 2, got {n}")));
        }
        let tuples = WedgeBasis::new(dim, n);
        let consts = vec![Vec::new(); tuples.len()];
        Ok(Self { n, dim, tuples, consts })
    }

    pub fn abelian(n: usize, dim: usize) -> Self {
        Self::new(n, dim).expect("arity at least 2")
    }

    /// The `(n+1)`-dimensional algebra with `[e_1,…,ê_i,…,e_{n+1}] = (-1)^i e_i`.
    pub fn simple(n: usize) -> Self {
        let mut a = Self::abelian(n, n + 1);
        for i in 0..=n {
            let args: Vec<usize> = (0..=n).filter(|&j| j != i).collect();
            let sign = if i % 2 == 0 { -1 } else { 1 };
            a.set_bracket(&args, vec![(i, Scalar::from_int(sign))]).expect("distinct indices");
        }
        a
    }

    /// `sl(2)` in the basis `e, f, h`.
    pub fn sl2() -> Self {
        let mut a = Self::abelian(2, 3);
        let (e, f, h) = (0, 1, 2);
        a.set_bracket(&[e, f], vec![(h, Scalar::ONE)]).unwrap();
        a.set_bracket(&[h, e], vec![(e, Scalar::from_int(2))]).unwrap();
        a.set_bracket(&[h, f], vec![(f, Scalar::from_int(-2))]).unwrap();
        a
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Sets `[e_{args}]`; `args` may be in any order.
    pub fn set_bracket(&mut self, args: &[usize], value: SparseVec) -> Result<()> {
        if args.len() != self.n {
            return Err(Error::Dimension(format!("bracket takes {} arguments, got {}", self.n, args.len())));
        }
        if let Some(&bad) = args.iter().chain(value.iter().map(|(i, _)| i)).find(|&&i| i >= self.dim) {
            return Err(Error::OutOfRange(format!("basis index {bad} in a {}-dimensional algebra", self.dim)));
        }
        let (pos, sign) = self
            .tuples
            .locate(args)
            .ok_or_else(|| Error::Invalid(format!("repeated index in bracket arguments {args:?}")))?;
        let value = crate::linalg::normalize(value);
        self.consts[pos] = if sign < 0 { value.into_iter().map(|(i, c)| (i, -c)).collect() } else { value };
        Ok(())
    }

    /// Nonzero structure constants keyed by increasing tuples.
    pub fn constants(&self) -> impl Iterator<Item = (&[usize], &SparseVec)> {
        self.tuples.iter().zip(&self.consts).filter(|(_, v)| !v.is_empty())
    }

    /// `[e_{t_1},…,e_{t_n}]` for an arbitrary index tuple.
    pub fn bracket_basis(&self, t: &[usize]) -> SparseVec {
        match self.tuples.locate(t) {
            Some((pos, sign)) if sign < 0 => self.consts[pos].iter().map(|(i, c)| (*i, -c)).collect(),
            Some((pos, _)) => self.consts[pos].clone(),
            None => Vec::new(),
        }
    }

    /// Multilinear extension of the bracket to sparse arguments.
    pub fn bracket_sparse(&self, args: &[&[(usize, Scalar)]]) -> SparseVec {
        let mut acc = Accumulator::new();
        let mut t = vec![0; self.n];
        expand(args, &mut t, 0, Scalar::ONE, &mut |t, c| {
            acc.add_scaled(&self.bracket_basis(t), &c);
        });
        acc.finish()
    }

    /// Multilinear extension of the bracket to dense arguments.
    pub fn bracket_eval(&self, args: &[Vec<Scalar>]) -> Result<Vec<Scalar>> {
        if args.len() != self.n {
            return Err(Error::Dimension(format!("bracket takes {} arguments, got {}", self.n, args.len())));
        }
        if let Some(v) = args.iter().find(|v| v.len() != self.dim) {
            return Err(Error::Dimension(format!("argument of length {} for dimension {}", v.len(), self.dim)));
        }
        let sparse: Vec<SparseVec> = args.iter().map(|v| crate::linalg::dense_to_sparse(v)).collect();
        let refs: Vec<&[(usize, Scalar)]> = sparse.iter().map(Vec::as_slice).collect();
        Ok(sparse_to_dense(&self.bracket_sparse(&refs), self.dim))
    }

    /// `y ↦ [e_{x_1},…,e_{x_{n-1}}, y]` as a `dim × dim` matrix.
    pub fn ad(&self, x: &[usize]) -> SparseMatrix {
        let mut t: Vec<usize> = x.to_vec();
        t.push(0);
        let mut triplets = Vec::new();
        for y in 0..self.dim {
            t[self.n - 1] = y;
            for (i, c) in self.bracket_basis(&t) {
                triplets.push((i, y, c));
            }
        }
        SparseMatrix::from_triplets(self.dim, self.dim, triplets).expect("indices in range")
    }

    /// Applies the derivation action of `[e_x, ·]` to the `k`-wedge at
    /// position `pos` of `basis`: `Σ_k w_1∧…∧[x, w_k]∧…∧w_k`.
    pub fn act_on_wedge(&self, x: &[usize], basis: &WedgeBasis, pos: usize) -> SparseVec {
        let mut acc = Accumulator::new();
        let mut t: Vec<usize> = x.to_vec();
        t.push(0);
        for (slot, &w) in basis.tuple(pos).iter().enumerate() {
            t[self.n - 1] = w;
            let image = self.bracket_basis(&t);
            acc.add_scaled(&basis.substitute(pos, slot, &image), &Scalar::ONE);
        }
        acc.finish()
    }

    /// Checks `[x, [y]] = Σ_k [y_1,…,[x, y_k],…,y_n]` on all increasing
    /// basis tuples `x` of length `n-1` and `y` of length `n`.
    pub fn validate_fundamental_identity(&self) -> Check {
        let lower = WedgeBasis::new(self.dim, self.n - 1);
        let pairs: Vec<(usize, usize)> =
            (0..lower.len()).flat_map(|a| (0..self.tuples.len()).map(move |b| (a, b))).collect();
        let found = pairs.par_iter().find_map_first(|&(a, b)| {
            let x = lower.tuple(a);
            let y = self.tuples.tuple(b);
            let mut t: Vec<usize> = x.to_vec();
            t.push(0);
            let mut lhs = Accumulator::new();
            for (i, c) in &self.consts[b] {
                t[self.n - 1] = *i;
                lhs.add_scaled(&self.bracket_basis(&t), c);
            }
            let mut rhs = Accumulator::new();
            for slot in 0..self.n {
                t[self.n - 1] = y[slot];
                let inner = self.bracket_basis(&t);
                let mut args: Vec<SparseVec> = y.iter().map(|&j| vec![(j, Scalar::ONE)]).collect();
                args[slot] = inner;
                let refs: Vec<&[(usize, Scalar)]> = args.iter().map(Vec::as_slice).collect();
                rhs.add_scaled(&self.bracket_sparse(&refs), &Scalar::ONE);
            }
            let (lhs, rhs) = (lhs.finish(), rhs.finish());
            (lhs != rhs).then(|| {
                Violation::new(
                    "fundamental identity",
                    vec![x.to_vec(), y.to_vec()],
                    sparse_to_dense(&lhs, self.dim),
                    sparse_to_dense(&rhs, self.dim),
                )
            })
        });
        found.map_or(Ok(()), Err)
    }
}

/// Enumerates the support of a product of sparse vectors, calling `f` with
/// the index tuple and the product of coefficients.
pub(crate) fn expand(
    args: &[&[(usize, Scalar)]],
    t: &mut Vec<usize>,
    depth: usize,
    coeff: Scalar,
    f: &mut impl FnMut(&[usize], Scalar),
) {
    if depth == args.len() {
        f(t, coeff);
        return;
    }
    for (i, c) in args[depth] {
        t[depth] = *i;
        expand(args, t, depth + 1, &coeff * c, f);
    }
}

/// A representation `μ: Λ^{n-1}L → gl(V)`, stored on increasing tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    algebra: NLieAlgebra,
    dim_v: usize,
    wedges: WedgeBasis,
    mu: Vec<SparseMatrix>,
}

impl Representation {
    /// The zero action on a `dim_v`-dimensional space.
    pub fn trivial(algebra: &NLieAlgebra, dim_v: usize) -> Self {
        let wedges = WedgeBasis::new(algebra.dim, algebra.n - 1);
        let mu = vec![SparseMatrix::zeros(dim_v, dim_v); wedges.len()];
        Self { algebra: algebra.clone(), dim_v, wedges, mu }
    }

    /// `μ(x_1,…,x_{n-1})(y) = [x_1,…,x_{n-1},y]`.
    pub fn adjoint(algebra: &NLieAlgebra) -> Self {
        let mut r = Self::trivial(algebra, algebra.dim);
        r.mu = r.wedges.iter().map(|x| algebra.ad(x)).collect();
        r
    }

    pub fn algebra(&self) -> &NLieAlgebra {
        &self.algebra
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    /// The basis of `Λ^{n-1}L` indexing the stored matrices.
    pub fn wedges(&self) -> &WedgeBasis {
        &self.wedges
    }

    /// Sets `μ(e_{args})`; `args` may be in any order.
    pub fn set_mu(&mut self, args: &[usize], matrix: SparseMatrix) -> Result<()> {
        if matrix.rows() != self.dim_v || matrix.cols() != self.dim_v {
            return Err(Error::Dimension(format!(
                "μ matrix is {}×{}, expected {}×{}",
                matrix.rows(),
                matrix.cols(),
                self.dim_v,
                self.dim_v
            )));
        }
        if args.len() != self.algebra.n - 1 {
            return Err(Error::Dimension(format!("μ takes {} arguments, got {}", self.algebra.n - 1, args.len())));
        }
        if let Some(&bad) = args.iter().find(|&&i| i >= self.algebra.dim) {
            return Err(Error::OutOfRange(format!("basis index {bad} in a {}-dimensional algebra", self.algebra.dim)));
        }
        let (pos, sign) = self
            .wedges
            .locate(args)
            .ok_or_else(|| Error::Invalid(format!("repeated index in μ arguments {args:?}")))?;
        self.mu[pos] = if sign < 0 { matrix.scale(&Scalar::from_int(-1)) } else { matrix };
        Ok(())
    }

    /// The stored matrix for the increasing tuple of rank `pos`.
    pub fn mu_at(&self, pos: usize) -> &SparseMatrix {
        &self.mu[pos]
    }

    /// `μ(e_{args})` for an arbitrary tuple, with its normalization sign.
    pub fn mu_signed(&self, args: &[usize]) -> Option<(&SparseMatrix, i32)> {
        let (pos, sign) = self.wedges.locate(args)?;
        Some((&self.mu[pos], sign))
    }

    /// `μ(e_{args})` as an owned matrix.
    pub fn mu(&self, args: &[usize]) -> SparseMatrix {
        match self.mu_signed(args) {
            Some((m, s)) if s < 0 => m.scale(&Scalar::from_int(-1)),
            Some((m, _)) => m.clone(),
            None => SparseMatrix::zeros(self.dim_v, self.dim_v),
        }
    }

    /// `μ(e_{args})(v)` for a sparse `v`.
    pub fn apply(&self, args: &[usize], v: &[(usize, Scalar)]) -> SparseVec {
        match self.mu_signed(args) {
            Some((m, s)) => {
                let w = m.mul_sparse_vec(v);
                if s < 0 {
                    w.into_iter().map(|(i, c)| (i, -c)).collect()
                } else {
                    w
                }
            }
            None => Vec::new(),
        }
    }

    /// `μ` evaluated on a linear combination of `(n-1)`-wedges.
    pub fn mu_of_combination(&self, wedge: &[(usize, Scalar)]) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.dim_v, self.dim_v);
        for (pos, c) in wedge {
            out = out.add(&self.mu[*pos].scale(c)).expect("equal shapes");
        }
        out
    }

    /// `μ(x)(T) = -T ∘ η(x)` on `Hom(V, W)`, with `T` flattened row-major:
    /// coordinate `w · dim_v + v` holds the entry `T[w][v]`.
    pub fn hom(&self, dim_w: usize) -> Representation {
        let dv = self.dim_v;
        let mut r = Representation::trivial(&self.algebra, dim_w * dv);
        r.mu = self
            .mu
            .iter()
            .map(|eta| {
                let mut triplets = Vec::new();
                for (u, v, c) in eta.entries() {
                    // (T ∘ η)[w][v] = Σ_u T[w][u] η[u][v]
                    for w in 0..dim_w {
                        triplets.push((w * dv + v, w * dv + u, -c));
                    }
                }
                SparseMatrix::from_triplets(dim_w * dv, dim_w * dv, triplets).expect("indices in range")
            })
            .collect();
        r
    }

    /// Checks both representation axioms on all increasing basis tuples.
    pub fn validate(&self) -> Check {
        self.validate_commutator()?;
        self.validate_bracket_rule()
    }

    /// `[μ(x), μ(y)] = Σ_k μ(y_1,…,[x, y_k],…,y_{n-1})`.
    pub fn validate_commutator(&self) -> Check {
        let len = self.wedges.len();
        let pairs: Vec<(usize, usize)> = (0..len).flat_map(|a| (0..len).map(move |b| (a, b))).collect();
        let found = pairs.par_iter().find_map_first(|&(a, b)| {
            let (ma, mb) = (&self.mu[a], &self.mu[b]);
            let lhs = ma.mul(mb).unwrap().sub(&mb.mul(ma).unwrap()).unwrap();
            let moved = self.algebra.act_on_wedge(self.wedges.tuple(a), &self.wedges, b);
            let rhs = self.mu_of_combination(&moved);
            (lhs != rhs).then(|| {
                self.matrix_violation(
                    "representation commutator axiom",
                    vec![self.wedges.tuple(a).to_vec(), self.wedges.tuple(b).to_vec()],
                    &lhs,
                    &rhs,
                )
            })
        });
        found.map_or(Ok(()), Err)
    }

    /// `μ([x_1,…,x_n], z) = Σ_k (-1)^k μ(x_1,…,x̂_k,…,x_n) μ(z, x_k)`.
    pub fn validate_bracket_rule(&self) -> Check {
        let (top, rest) = self.bracket_rule_tuples();
        let pairs: Vec<(usize, usize)> = (0..top.len()).flat_map(|a| (0..rest.len()).map(move |b| (a, b))).collect();
        let found = pairs.par_iter().find_map_first(|&(a, b)| {
            let x = top.tuple(a);
            let z = rest.tuple(b);
            let mut lhs = SparseMatrix::zeros(self.dim_v, self.dim_v);
            for (i, c) in self.algebra.bracket_basis(x) {
                let mut t = vec![i];
                t.extend_from_slice(z);
                lhs = lhs.add(&self.mu(&t).scale(&c)).unwrap();
            }
            let rhs = self.alternating_products(x, z, false);
            (lhs != rhs).then(|| {
                self.matrix_violation("representation bracket axiom", vec![x.to_vec(), z.to_vec()], &lhs, &rhs)
            })
        });
        found.map_or(Ok(()), Err)
    }

    /// Checks that `Σ_k (-1)^k [μ(x̂_k) μ(z, x_k) + μ(z, x_k) μ(x̂_k)]`
    /// vanishes on all increasing basis tuples.
    pub fn check_rep_identity(&self) -> Check {
        let (top, rest) = self.bracket_rule_tuples();
        let pairs: Vec<(usize, usize)> = (0..top.len()).flat_map(|a| (0..rest.len()).map(move |b| (a, b))).collect();
        let zero = SparseMatrix::zeros(self.dim_v, self.dim_v);
        let found = pairs.par_iter().find_map_first(|&(a, b)| {
            let x = top.tuple(a);
            let z = rest.tuple(b);
            let total = self.alternating_products(x, z, false).add(&self.alternating_products(x, z, true)).unwrap();
            (!total.is_zero()).then(|| {
                self.matrix_violation("two-sum representation identity", vec![x.to_vec(), z.to_vec()], &total, &zero)
            })
        });
        found.map_or(Ok(()), Err)
    }

    fn bracket_rule_tuples(&self) -> (WedgeBasis, WedgeBasis) {
        let n = self.algebra.n;
        (WedgeBasis::new(self.algebra.dim, n), WedgeBasis::new(self.algebra.dim, n - 2))
    }

    /// `Σ_k (-1)^k μ(x̂_k) μ(z, x_k)`, or with the factors swapped.
    fn alternating_products(&self, x: &[usize], z: &[usize], swapped: bool) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.dim_v, self.dim_v);
        for k in 0..x.len() {
            let hat: Vec<usize> = x.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &v)| v).collect();
            let mut tail = z.to_vec();
            tail.push(x[k]);
            let (p, q) = (self.mu(&hat), self.mu(&tail));
            let prod = if swapped { q.mul(&p).unwrap() } else { p.mul(&q).unwrap() };
            let sign = if k % 2 == 0 { -1 } else { 1 };
            out = out.add(&prod.scale(&Scalar::from_int(sign))).unwrap();
        }
        out
    }

    fn matrix_violation(
        &self,
        identity: &str,
        args: Vec<Vec<usize>>,
        lhs: &SparseMatrix,
        rhs: &SparseMatrix,
    ) -> Violation {
        Violation::new(identity, args, lhs.to_dense().concat(), rhs.to_dense().concat())
    }

    /// The bracket on `V ⊕ L` (V first) with `[x_1,…,x_{n-1}, v] = μ(x)(v)`
    /// and `[x_1,…,x_n]` on `L`; brackets with two `V` arguments vanish.
    pub fn semidirect_sum(&self) -> NLieAlgebra {
        let n = self.algebra.n;
        let dv = self.dim_v;
        let mut out = NLieAlgebra::abelian(n, dv + self.algebra.dim);
        let shift = |v: SparseVec| -> SparseVec { v.into_iter().map(|(i, c)| (i + dv, c)).collect() };
        for pos in 0..out.tuples.len() {
            let t = out.tuples.tuple(pos).to_vec();
            let in_v = t.iter().take_while(|&&i| i < dv).count();
            out.consts[pos] = match in_v {
                0 => {
                    let x: Vec<usize> = t.iter().map(|i| i - dv).collect();
                    shift(self.algebra.bracket_basis(&x))
                }
                1 => {
                    // [v, x_2,…,x_n] = (-1)^{n-1} [x_2,…,x_n, v]
                    let x: Vec<usize> = t[1..].iter().map(|i| i - dv).collect();
                    let image = self.apply(&x, &[(t[0], Scalar::ONE)]);
                    let neg = (n - 1) % 2 == 1;
                    image.into_iter().map(|(i, c)| (i, c.signed(neg))).collect()
                }
                _ => Vec::new(),
            };
        }
        out
    }
}

/// Splits a sparse vector supported on `V ⊕ L` (V first) into its parts.
pub fn split_sum(v: &[(usize, Scalar)], dim_v: usize) -> (SparseVec, SparseVec) {
    let (a, b): (Vec<_>, Vec<_>) = v.iter().cloned().partition(|(i, _)| *i < dim_v);
    (a, b.into_iter().map(|(i, c)| (i - dim_v, c)).collect())
}
