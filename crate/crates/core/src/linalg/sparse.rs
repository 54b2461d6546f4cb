use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Sparse vector: strictly increasing indices, no stored zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

/// Sorts, merges duplicate indices and drops zeros.
pub fn normalize(mut entries: Vec<(usize, Scalar)>) -> SparseVec {
    if entries.len() <= 1 {
        entries.retain(|(_, v)| !v.is_zero());
        return entries;
    }
    entries.sort_by_key(|(i, _)| *i);
    let mut out: SparseVec = Vec::with_capacity(entries.len());
    for (i, v) in entries {
        match out.last_mut() {
            Some((j, acc)) if *j == i => *acc += v,
            _ => {
                if let Some((_, last)) = out.last() {
                    if last.is_zero() {
                        out.pop();
                    }
                }
                out.push((i, v));
            }
        }
    }
    if let Some((_, last)) = out.last() {
        if last.is_zero() {
            out.pop();
        }
    }
    out
}

/// `a + c * b` for sparse vectors.
pub fn axpy(a: &[(usize, Scalar)], c: &Scalar, b: &[(usize, Scalar)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            out.push((b[j].0, c * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + &(c * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sparse_to_dense(v: &[(usize, Scalar)], len: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::ZERO; len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn dense_to_sparse(v: &[Scalar]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

/// Accumulates `index -> coefficient` contributions; zeros are dropped on
/// [`Accumulator::finish`].
#[derive(Default, Debug, Clone)]
pub struct Accumulator(BTreeMap<usize, Scalar>);

impl Accumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, index: usize, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        *self.0.entry(index).or_insert(Scalar::ZERO) += coeff;
    }

    pub fn add_scaled(&mut self, v: &[(usize, Scalar)], c: &Scalar) {
        for (i, x) in v {
            self.add(*i, c * x);
        }
    }

    pub fn finish(self) -> SparseVec {
        self.0.into_iter().filter(|(_, v)| !v.is_zero()).collect()
    }
}

/// Row-major sparse matrix over the rationals.
///
/// Invariants: every row is strictly increasing in column index, no stored
/// zeros, all column indices `< cols`.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn identity(n: usize) -> Self {
        Self { rows: n, cols: n, data: (0..n).map(|i| vec![(i, Scalar::ONE)]).collect() }
    }

    pub fn scalar_identity(n: usize, c: Scalar) -> Self {
        if c.is_zero() {
            return Self::zeros(n, n);
        }
        Self { rows: n, cols: n, data: (0..n).map(|i| vec![(i, c.clone())]).collect() }
    }

    /// Builds from possibly unsorted rows with duplicate columns.
    pub fn from_rows(cols: usize, rows: Vec<Vec<(usize, Scalar)>>) -> Self {
        let data: Vec<SparseVec> = rows.into_iter().map(normalize).collect();
        debug_assert!(data.iter().flatten().all(|(c, _)| *c < cols));
        Self { rows: data.len(), cols, data }
    }

    /// Builds each row independently (in parallel); the layout is fixed by
    /// row index so the result does not depend on scheduling.
    pub fn from_row_fn<F>(rows: usize, cols: usize, f: F) -> Self
    where
        F: Fn(usize) -> Vec<(usize, Scalar)> + Sync,
    {
        let data: Vec<SparseVec> = (0..rows).into_par_iter().map(|r| normalize(f(r))).collect();
        debug_assert!(data.iter().flatten().all(|(c, _)| *c < cols));
        Self { rows, cols, data }
    }

    /// Builds column by column; `f(j)` is the image of the `j`-th basis vector.
    pub fn from_col_fn<F>(rows: usize, cols: usize, f: F) -> Self
    where
        F: Fn(usize) -> Vec<(usize, Scalar)> + Sync,
    {
        Self::from_row_fn(cols, rows, f).transpose()
    }

    pub fn from_triplets<I>(rows: usize, cols: usize, triplets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut data: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(Error::OutOfRange(format!("entry ({r}, {c}) outside {rows}x{cols}")));
            }
            data[r].push((c, v));
        }
        Ok(Self::from_rows(cols, data))
    }

    pub fn from_dense(rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self { rows: rows.len(), cols, data: rows.iter().map(|r| dense_to_sparse(r)).collect() }
    }

    /// Integer convenience constructor, mostly for tests.
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let dense: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect();
        Self::from_dense(&dense)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn row(&self, r: usize) -> &[(usize, Scalar)] {
        &self.data[r]
    }

    pub fn row_vecs(&self) -> &[SparseVec] {
        &self.data
    }

    pub fn into_rows(self) -> Vec<SparseVec> {
        self.data
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        match self.data[r].binary_search_by_key(&c, |(j, _)| *j) {
            Ok(k) => self.data[r][k].1.clone(),
            Err(_) => Scalar::ZERO,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    /// Iterates `(row, col, value)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.data.iter().enumerate().flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut data: Vec<SparseVec> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                data[*c].push((r, v.clone()));
            }
        }
        SparseMatrix { rows: self.cols, cols: self.rows, data }
    }

    /// Column `j` as a sparse vector.
    pub fn column(&self, j: usize) -> SparseVec {
        self.data
            .iter()
            .enumerate()
            .filter_map(|(r, row)| row.binary_search_by_key(&j, |(c, _)| *c).ok().map(|k| (r, row[k].1.clone())))
            .collect()
    }

    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data: Vec<SparseVec> = self
            .data
            .par_iter()
            .map(|row| {
                let mut acc = Accumulator::new();
                for (k, a) in row {
                    acc.add_scaled(other.row(*k), a);
                }
                acc.finish()
            })
            .collect();
        Ok(SparseMatrix { rows: self.rows, cols: other.cols, data })
    }

    pub fn mul_vec(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.cols {
            return Err(Error::Dimension(format!("vector of length {} against {} columns", x.len(), self.cols)));
        }
        Ok(self.data.iter().map(|row| row.iter().map(|(c, v)| v * &x[*c]).sum()).collect())
    }

    pub fn mul_sparse_vec(&self, x: &[(usize, Scalar)]) -> SparseVec {
        let mut dense = vec![Scalar::ZERO; self.cols];
        for (i, v) in x {
            dense[*i] = v.clone();
        }
        let mut out = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            let s: Scalar = row.iter().map(|(c, v)| v * &dense[*c]).sum();
            if !s.is_zero() {
                out.push((r, s));
            }
        }
        out
    }

    fn zip_rows(&self, other: &SparseMatrix, c: &Scalar) -> Result<SparseMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!(
                "shape {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| axpy(a, c, b)).collect();
        Ok(SparseMatrix { rows: self.rows, cols: self.cols, data })
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.zip_rows(other, &Scalar::ONE)
    }

    pub fn sub(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.zip_rows(other, &Scalar::from_int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> SparseMatrix {
        if c.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        let data = self.data.iter().map(|row| row.iter().map(|(j, v)| (*j, v * c)).collect()).collect();
        SparseMatrix { rows: self.rows, cols: self.cols, data }
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        self.data.iter().map(|r| sparse_to_dense(r, self.cols)).collect()
    }

    /// First entry (row-major) where `self` and `other` differ.
    pub fn first_difference(&self, other: &SparseMatrix) -> Option<(usize, usize, Scalar, Scalar)> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some((self.rows, self.cols, Scalar::ZERO, Scalar::ZERO));
        }
        for r in 0..self.rows {
            if self.data[r] != other.data[r] {
                let d = axpy(&self.data[r], &Scalar::from_int(-1), &other.data[r]);
                let c = d[0].0;
                return Some((r, c, self.get(r, c), other.get(r, c)));
            }
        }
        None
    }

    /// Block-diagonal / stacking helpers used when assembling linear systems.
    pub fn vstack(blocks: &[SparseMatrix]) -> Result<SparseMatrix> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        for b in blocks {
            if b.cols != cols {
                return Err(Error::Dimension("vstack with differing column counts".into()));
            }
            data.extend(b.data.iter().cloned());
        }
        Ok(SparseMatrix { rows: data.len(), cols, data })
    }

    pub fn hstack(blocks: &[SparseMatrix]) -> Result<SparseMatrix> {
        let ts: Vec<SparseMatrix> = blocks.iter().map(|b| b.transpose()).collect();
        Ok(Self::vstack(&ts)?.transpose())
    }
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SparseMatrix {}x{} ({} nnz)", self.rows, self.cols, self.nnz())?;
        if self.rows * self.cols <= 144 {
            for row in self.to_dense() {
                let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                writeln!(f, "  [{}]", cells.join(", "))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_merges_and_drops() {
        let v = normalize(vec![
            (3, Scalar::from_int(1)),
            (1, Scalar::from_int(2)),
            (3, Scalar::from_int(-1)),
            (1, Scalar::from_int(1)),
            (0, Scalar::ZERO),
        ]);
        assert_eq!(v, vec![(1, Scalar::from_int(3))]);
    }

    #[test]
    fn product_and_transpose() {
        let a = SparseMatrix::from_ints(&[&[1, 2], &[0, 1], &[3, 0]]);
        let b = SparseMatrix::from_ints(&[&[1, 0, 1], &[0, 1, -1]]);
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab, SparseMatrix::from_ints(&[&[1, 2, -1], &[0, 1, -1], &[3, 0, 3]]));
        assert_eq!(ab.transpose().transpose(), ab);
        assert!(a.mul(&a).is_err());
    }

    #[test]
    fn triplets_reject_out_of_range() {
        assert!(SparseMatrix::from_triplets(2, 2, [(2, 0, Scalar::ONE)]).is_err());
        let m = SparseMatrix::from_triplets(2, 2, [(0, 1, Scalar::ONE), (0, 1, Scalar::from_int(-1))]).unwrap();
        assert!(m.is_zero());
    }
}
