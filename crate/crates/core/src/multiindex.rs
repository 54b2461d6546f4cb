//! Wedge bases of a based vector space: enumeration, ranking and sign
//! normalization of strictly increasing index tuples.
//!
//! Indices are 0-based throughout the library; file formats shift to
//! 1-based at the boundary.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{Accumulator, SparseVec};
use crate::scalar::Scalar;

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Sorts `tuple` and reports the parity of the sorting permutation as
/// `+1`/`-1`, or `None` if an index repeats.
pub fn sort_with_sign(tuple: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut t = tuple.to_vec();
    let mut sign = 1;
    // insertion sort counts transpositions
    for i in 1..t.len() {
        let mut j = i;
        while j > 0 && t[j - 1] > t[j] {
            t.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
        if j > 0 && t[j - 1] == t[j] {
            return None;
        }
    }
    Some((t, sign))
}

/// Lexicographic rank of a strictly increasing tuple among `k`-subsets of
/// `0..d`.
pub fn rank_of(w: &[usize], d: usize) -> Result<usize> {
    if w.windows(2).any(|p| p[0] >= p[1]) || w.last().is_some_and(|&x| x >= d) {
        return Err(Error::OutOfRange(format!("{w:?} is not an increasing tuple below {d}")));
    }
    Ok(rank_unchecked(w, d))
}

#[inline]
fn rank_unchecked(w: &[usize], d: usize) -> usize {
    let k = w.len();
    let total = binomial(d, k);
    let tail: usize = w.iter().enumerate().map(|(i, &a)| binomial(d - 1 - a, k - i)).sum();
    total - 1 - tail
}

/// Inverse of [`rank_of`].
pub fn unrank(pos: usize, k: usize, d: usize) -> Result<Vec<usize>> {
    let total = binomial(d, k);
    if pos >= total {
        return Err(Error::OutOfRange(format!("position {pos} with only {total} {k}-subsets of {d}")));
    }
    let mut out = Vec::with_capacity(k);
    let mut remaining = pos;
    let mut next = 0;
    for i in 0..k {
        let mut a = next;
        loop {
            let block = binomial(d - 1 - a, k - 1 - i);
            if remaining < block {
                break;
            }
            remaining -= block;
            a += 1;
        }
        out.push(a);
        next = a + 1;
    }
    Ok(out)
}

/// The basis of `Λ^k` of a `d`-dimensional space in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WedgeBasis {
    d: usize,
    k: usize,
    tuples: Vec<Vec<usize>>,
}

impl WedgeBasis {
    pub fn new(d: usize, k: usize) -> Self {
        let tuples = (0..binomial(d, k)).map(|p| unrank(p, k, d).expect("position below the binomial count")).collect();
        Self { d, k, tuples }
    }

    pub fn ambient_dim(&self) -> usize {
        self.d
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn tuple(&self, pos: usize) -> &[usize] {
        &self.tuples[pos]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[usize]> {
        self.tuples.iter().map(Vec::as_slice)
    }

    /// Rank and sign of an arbitrary tuple, `None` if it has a repeat.
    pub fn locate(&self, tuple: &[usize]) -> Option<(usize, i32)> {
        debug_assert_eq!(tuple.len(), self.k);
        let (sorted, sign) = sort_with_sign(tuple)?;
        Some((rank_unchecked(&sorted, self.d), sign))
    }

    /// Expands `v_1 ∧ … ∧ v_k` for sparse vectors into wedge coordinates.
    pub fn wedge(&self, factors: &[&[(usize, Scalar)]]) -> SparseVec {
        debug_assert_eq!(factors.len(), self.k);
        let mut acc = Accumulator::new();
        let mut idx = vec![0usize; self.k];
        let mut picks = vec![0usize; self.k];
        if factors.iter().any(|f| f.is_empty()) {
            return Vec::new();
        }
        'outer: loop {
            for (p, (f, &i)) in factors.iter().zip(&idx).enumerate() {
                picks[p] = f[i].0;
            }
            if let Some((pos, sign)) = self.locate(&picks) {
                let coeff: Scalar = factors.iter().zip(&idx).map(|(f, &i)| f[i].1.clone()).product();
                acc.add(pos, coeff.signed(sign < 0));
            }
            for p in (0..self.k).rev() {
                idx[p] += 1;
                if idx[p] < factors[p].len() {
                    continue 'outer;
                }
                idx[p] = 0;
            }
            break;
        }
        acc.finish()
    }

    /// Replaces position `slot` of the basis tuple at `pos` with the sparse
    /// vector `v` and re-expands in this basis.
    pub fn substitute(&self, pos: usize, slot: usize, v: &[(usize, Scalar)]) -> SparseVec {
        let mut t = self.tuples[pos].clone();
        let mut acc = Accumulator::new();
        for (i, c) in v {
            t[slot] = *i;
            if let Some((r, sign)) = self.locate(&t) {
                acc.add(r, c.clone().signed(sign < 0));
            }
        }
        acc.finish()
    }
}

/// One factor of a tensor-product basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Factor {
    /// `Λ^k L` with `C(dim L, k)` elements.
    Wedge { k: usize, dim: usize },
    /// A plain based space (L, V, or a Leibniz algebra).
    Plain { dim: usize },
}

impl Factor {
    pub fn dim(&self) -> usize {
        match *self {
            Factor::Wedge { k, dim } => binomial(dim, k),
            Factor::Plain { dim } => dim,
        }
    }
}

/// Formal tensor product of factors, enumerated row-major (last factor
/// varies fastest).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BasisDescriptor {
    factors: Vec<Factor>,
    dims: Vec<usize>,
    total: usize,
}

impl BasisDescriptor {
    pub fn new(factors: Vec<Factor>) -> Self {
        let dims: Vec<usize> = factors.iter().map(Factor::dim).collect();
        let total = dims.iter().product();
        Self { factors, dims, total }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.total
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        debug_assert_eq!(coords.len(), self.dims.len());
        coords.iter().zip(&self.dims).fold(0, |acc, (&c, &d)| {
            debug_assert!(c < d);
            acc * d + c
        })
    }

    pub fn decode(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims.len()];
        for (slot, &d) in out.iter_mut().zip(&self.dims).rev() {
            *slot = index % d;
            index /= d;
        }
        out
    }
}

impl fmt::Display for BasisDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|fac| match fac {
                Factor::Wedge { k, dim } => format!("Λ^{k}({dim})"),
                Factor::Plain { dim } => format!("k^{dim}"),
            })
            .collect();
        write!(f, "{}", parts.join(" ⊗ "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorting_signs() {
        assert_eq!(sort_with_sign(&[1, 0]), Some((vec![0, 1], -1)));
        assert_eq!(sort_with_sign(&[0, 1, 2]), Some((vec![0, 1, 2], 1)));
        assert_eq!(sort_with_sign(&[0, 0]), None);
        assert_eq!(sort_with_sign(&[]), Some((vec![], 1)));
    }

    #[test]
    fn ranking_examples() {
        assert_eq!(rank_of(&[0, 1], 3).unwrap(), 0);
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(unrank(5, 2, 4).unwrap(), vec![2, 3]);
        assert!(unrank(6, 2, 4).is_err());
        assert!(rank_of(&[1, 1], 3).is_err());
        assert_eq!(WedgeBasis::new(5, 0).len(), 1);
        assert_eq!(WedgeBasis::new(2, 3).len(), 0);
    }

    #[test]
    fn rank_unrank_exhaustive() {
        for d in 0..=8 {
            for k in 0..=d {
                let mut prev: Option<Vec<usize>> = None;
                for p in 0..binomial(d, k) {
                    let t = unrank(p, k, d).unwrap();
                    assert_eq!(rank_of(&t, d).unwrap(), p);
                    if let Some(q) = prev {
                        assert!(q < t, "lexicographic order");
                    }
                    prev = Some(t);
                }
            }
        }
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    fn parity(p: &[usize]) -> i32 {
        let inversions =
            (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn sign_is_permutation_parity_exhaustive() {
        let pools: [&[usize]; 3] = [&[0, 1, 2, 3], &[3, 5, 6, 9], &[2, 2, 4, 7]];
        for len in 0..=4 {
            for pool in pools {
                let t = &pool[..len];
                let base = sort_with_sign(t);
                for sigma in permutations(len) {
                    let permuted: Vec<usize> = sigma.iter().map(|&i| t[i]).collect();
                    let got = sort_with_sign(&permuted);
                    match &base {
                        None => assert!(got.is_none()),
                        Some((s, sg)) => assert_eq!(got, Some((s.clone(), sg * parity(&sigma)))),
                    }
                }
            }
        }
    }

    #[test]
    fn descriptor_round_trip() {
        let b = BasisDescriptor::new(vec![
            Factor::Wedge { k: 2, dim: 4 },
            Factor::Plain { dim: 3 },
            Factor::Plain { dim: 2 },
        ]);
        assert_eq!(b.dim(), 36);
        for i in 0..b.dim() {
            assert_eq!(b.encode(&b.decode(i)), i);
        }
        assert_eq!(b.decode(7), vec![1, 0, 1]);
    }

    #[test]
    fn wedge_expansion() {
        let basis = WedgeBasis::new(3, 2);
        let e = |i: usize| vec![(i, Scalar::ONE)];
        // e1 ∧ e0 = -(e0 ∧ e1)
        assert_eq!(basis.wedge(&[&e(1), &e(0)]), vec![(0, Scalar::from_int(-1))]);
        // (e0 + e1) ∧ (e0 + e1) = 0
        let s = vec![(0, Scalar::ONE), (1, Scalar::ONE)];
        assert!(basis.wedge(&[&s, &s]).is_empty());
        assert_eq!(basis.substitute(0, 1, &e(0)), vec![]);
        assert_eq!(basis.substitute(0, 0, &e(2)), vec![(2, Scalar::from_int(-1))]);
    }
}
