//! Row-wise assembly of linear maps between cochain spaces.
//!
//! A cochain space is a tensor product `A ⊗ V` where `A` enumerates
//! argument tuples and `V` is the coefficient space; coordinate
//! `arg · width + v` holds component `v` of the value on argument `arg`.
//! Operators produce, for each target argument, the block of rows giving
//! the value there as a combination of source coordinates.

use rayon::prelude::*;

use crate::linalg::{Accumulator, SparseMatrix, SparseVec};
use crate::scalar::Scalar;

/// Rows of one target argument under construction.
pub struct RowBlock {
    in_width: usize,
    rows: Vec<Accumulator>,
}

impl RowBlock {
    pub fn new(in_width: usize, out_width: usize) -> Self {
        Self { in_width, rows: (0..out_width).map(|_| Accumulator::new()).collect() }
    }

    /// Adds `coeff · f(arg)` into output components `offset..offset+in_width`.
    pub fn eval(&mut self, coeff: &Scalar, arg: usize, offset: usize) {
        if coeff.is_zero() {
            return;
        }
        let base = arg * self.in_width;
        for v in 0..self.in_width {
            self.rows[offset + v].add(base + v, coeff.clone());
        }
    }

    /// Adds `coeff · M f(arg)` into output components starting at `offset`.
    pub fn act(&mut self, coeff: &Scalar, m: &SparseMatrix, arg: usize, offset: usize) {
        if coeff.is_zero() {
            return;
        }
        let base = arg * self.in_width;
        for (r, v, c) in m.entries() {
            self.rows[offset + r].add(base + v, coeff * c);
        }
    }

    pub fn finish(self) -> Vec<SparseVec> {
        self.rows.into_iter().map(Accumulator::finish).collect()
    }
}

/// A linear map between cochain spaces described argument by argument.
pub trait CochainMap: Sync {
    /// Dimension of the source space.
    fn source_dim(&self) -> usize;
    /// Coefficient width of the source space.
    fn source_width(&self) -> usize;
    /// Number of target argument tuples.
    fn target_args(&self) -> usize;
    /// Coefficient width of the target space.
    fn target_width(&self) -> usize;
    /// Fills in the rows for target argument `arg`.
    fn block(&self, arg: usize, out: &mut RowBlock);

    fn target_dim(&self) -> usize {
        self.target_args() * self.target_width()
    }

    fn rows_for(&self, arg: usize) -> Vec<SparseVec> {
        let mut block = RowBlock::new(self.source_width(), self.target_width());
        self.block(arg, &mut block);
        block.finish()
    }

    /// The full matrix, assembled in parallel over target arguments.
    fn matrix(&self) -> SparseMatrix {
        let blocks: Vec<Vec<SparseVec>> = (0..self.target_args()).into_par_iter().map(|a| self.rows_for(a)).collect();
        SparseMatrix::from_rows(self.source_dim(), blocks.into_iter().flatten().collect())
    }

    /// Applies the map to a sparse source vector without forming the matrix.
    fn apply(&self, f: &[(usize, Scalar)]) -> SparseVec {
        let dense = crate::linalg::sparse_to_dense(f, self.source_dim());
        let width = self.target_width();
        let blocks: Vec<SparseVec> = (0..self.target_args())
            .into_par_iter()
            .map(|a| {
                self.rows_for(a)
                    .iter()
                    .enumerate()
                    .filter_map(|(k, row)| {
                        let s: Scalar = row.iter().map(|(j, c)| c * &dense[*j]).sum();
                        (!s.is_zero()).then(|| (a * width + k, s))
                    })
                    .collect()
            })
            .collect();
        blocks.into_iter().flatten().collect()
    }
}

/// First entry `(row, col, value)` of `outer ∘ inner` that is nonzero, with
/// rows of `outer` streamed so the full outer matrix is never stored.
pub fn first_nonzero_of_composition(outer: &dyn CochainMap, inner: &SparseMatrix) -> Option<(usize, usize, Scalar)> {
    assert_eq!(outer.source_dim(), inner.rows(), "composable shapes");
    let width = outer.target_width();
    (0..outer.target_args()).into_par_iter().find_map_first(|a| {
        outer.rows_for(a).into_iter().enumerate().find_map(|(k, row)| {
            let mut acc = Accumulator::new();
            for (j, c) in &row {
                acc.add_scaled(inner.row(*j), c);
            }
            acc.finish().into_iter().next().map(|(col, v)| (a * width + k, col, v))
        })
    })
}

/// First entry where `outer ∘ inner` differs from `other`, streaming the
/// rows of `outer`.
pub fn first_difference_of_composition(
    outer: &dyn CochainMap,
    inner: &SparseMatrix,
    other: &SparseMatrix,
) -> Option<(usize, usize, Scalar, Scalar)> {
    assert_eq!(outer.source_dim(), inner.rows(), "composable shapes");
    assert_eq!(outer.target_dim(), other.rows(), "equal target shapes");
    let width = outer.target_width();
    (0..outer.target_args()).into_par_iter().find_map_first(|a| {
        outer.rows_for(a).into_iter().enumerate().find_map(|(k, row)| {
            let mut acc = Accumulator::new();
            for (j, c) in &row {
                acc.add_scaled(inner.row(*j), c);
            }
            let r = a * width + k;
            let got = acc.finish();
            let want = other.row(r);
            (got.as_slice() != want).then(|| {
                let m = SparseMatrix::from_rows(other.cols(), vec![got]);
                let w = SparseMatrix::from_rows(other.cols(), vec![want.to_vec()]);
                let (_, c, x, y) = m.first_difference(&w).expect("rows differ");
                (r, c, x, y)
            })
        })
    })
}

/// `(-1)^e` as a scalar.
/// A random vector with entries in `-bound..=bound`, about half of them zero.
pub fn random_vector<R: rand::Rng>(rng: &mut R, dim: usize, bound: i64) -> SparseVec {
    (0..dim)
        .filter_map(|i| {
            let c = if rng.gen_bool(0.5) { rng.gen_range(-bound..=bound) } else { 0 };
            (c != 0).then(|| (i, Scalar::from_int(c)))
        })
        .collect()
}

pub fn alt(e: usize) -> Scalar {
    if e.is_multiple_of(2) {
        Scalar::ONE
    } else {
        Scalar::from_int(-1)
    }
}

/// Mixed-radix encoding of a tuple of argument labels.
pub fn encode(labels: &[usize], radices: &[usize]) -> usize {
    labels.iter().zip(radices).fold(0, |acc, (&l, &r)| acc * r + l)
}

/// Inverse of [`encode`].
pub fn decode(mut index: usize, radices: &[usize]) -> Vec<usize> {
    let mut out = vec![0; radices.len()];
    for (slot, &r) in out.iter_mut().zip(radices).rev() {
        *slot = index % r;
        index /= r;
    }
    out
}
