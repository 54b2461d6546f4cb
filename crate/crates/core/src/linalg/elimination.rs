use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::sparse::{axpy, sparse_to_dense, SparseMatrix, SparseVec};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Integer row: strictly increasing columns, nonzero entries, content 1,
/// positive leading coefficient.
type IntRow = Vec<(usize, BigInt)>;

fn primitive(row: &[(usize, Scalar)]) -> IntRow {
    if row.is_empty() {
        return Vec::new();
    }
    let lcm = row.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(&v.denom()));
    let mut ints: IntRow = row.iter().map(|(c, v)| (*c, v.numer() * (&lcm / v.denom()))).collect();
    make_primitive(&mut ints);
    ints
}

fn make_primitive(row: &mut IntRow) {
    if row.is_empty() {
        return;
    }
    let g = row.iter().fold(BigInt::zero(), |acc, (_, v)| acc.gcd(v));
    let flip = row[0].1.is_negative();
    if !g.is_one() || flip {
        let g = if flip { -g } else { g };
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}

/// `a * row - b * pivot`, dropping the cancelled leading entry.
fn combine(row: &IntRow, pivot: &IntRow) -> IntRow {
    let (a, b) = {
        let p = &pivot[0].1;
        let r = &row[0].1;
        let g = p.gcd(r);
        (p / &g, r / &g)
    };
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let take_r = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_p = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_r {
            out.push((row[i].0, &a * &row[i].1));
            i += 1;
        } else if take_p {
            out.push((pivot[j].0, -(&b * &pivot[j].1)));
            j += 1;
        } else {
            let v = &a * &row[i].1 - &b * &pivot[j].1;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    make_primitive(&mut out);
    out
}

/// Fraction-free forward elimination to row echelon form.
///
/// Columns are processed left to right; within a column the pivot is the
/// row with the smallest leading magnitude (ties: fewer nonzeros, then
/// input order). Returns the pivot rows keyed by pivot column.
fn echelon(rows: &[SparseVec]) -> BTreeMap<usize, IntRow> {
    let mut buckets: BTreeMap<usize, Vec<(usize, IntRow)>> = BTreeMap::new();
    for (order, row) in rows.iter().enumerate() {
        let r = primitive(row);
        if let Some(&(c, _)) = r.first() {
            buckets.entry(c).or_default().push((order, r));
        }
    }
    let mut pivots = BTreeMap::new();
    let mut next_order = rows.len();
    while let Some((col, mut bucket)) = buckets.pop_first() {
        let best = bucket
            .iter()
            .enumerate()
            .min_by(|(_, (oa, a)), (_, (ob, b))| {
                a[0].1.abs().cmp(&b[0].1.abs()).then(a.len().cmp(&b.len())).then(oa.cmp(ob))
            })
            .map(|(k, _)| k)
            .expect("bucket is never empty");
        let (_, pivot) = bucket.swap_remove(best);
        for (_, row) in bucket {
            let reduced = combine(&row, &pivot);
            if let Some(&(c, _)) = reduced.first() {
                buckets.entry(c).or_default().push((next_order, reduced));
                next_order += 1;
            }
        }
        pivots.insert(col, pivot);
    }
    pivots
}

/// Exact rank over the rationals.
pub fn rank(m: &SparseMatrix) -> usize {
    if m.rows() > m.cols() {
        echelon(m.transpose().row_vecs()).len()
    } else {
        echelon(m.row_vecs()).len()
    }
}

/// Reduced row echelon form: pivot column -> row with a 1 in the pivot
/// column and zeros in every other pivot column.
#[derive(Debug, Clone)]
pub struct Rref {
    pub cols: usize,
    pub pivots: BTreeMap<usize, SparseVec>,
}

impl Rref {
    pub fn new(rows: &[SparseVec], cols: usize) -> Self {
        let echelon = echelon(rows);
        let mut reduced: BTreeMap<usize, SparseVec> = BTreeMap::new();
        for (&col, row) in echelon.iter().rev() {
            let lead = Scalar::from(row[0].1.clone());
            let inv = lead.recip();
            let mut r: SparseVec = row.iter().map(|(c, v)| (*c, Scalar::from(v.clone()) * &inv)).collect();
            // Clear later pivot columns using already-reduced rows.
            loop {
                let hit = r.iter().skip(1).find(|(c, _)| reduced.contains_key(c)).map(|(c, v)| (*c, v.clone()));
                match hit {
                    Some((c, v)) => r = axpy(&r, &-v, &reduced[&c]),
                    None => break,
                }
            }
            reduced.insert(col, r);
        }
        Rref { cols, pivots: reduced }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.cols).filter(|c| !self.pivots.contains_key(c)).collect()
    }

    /// Canonical kernel basis: one vector per free column `f` (ascending),
    /// with a 1 at `f` and the negated reduced coefficients at pivots.
    pub fn kernel_basis(&self) -> Vec<Vec<Scalar>> {
        let mut by_free: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
        for (&p, row) in &self.pivots {
            for (c, v) in row.iter().skip(1) {
                by_free.entry(*c).or_default().push((p, -v));
            }
        }
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut v = vec![Scalar::ZERO; self.cols];
                v[f] = Scalar::ONE;
                if let Some(entries) = by_free.get(&f) {
                    for (p, x) in entries {
                        v[*p] = x.clone();
                    }
                }
                v
            })
            .collect()
    }
}

/// Basis of `{v : M v = 0}`, ordered by free column of the domain.
pub fn kernel_basis(m: &SparseMatrix) -> Vec<Vec<Scalar>> {
    Rref::new(m.row_vecs(), m.cols()).kernel_basis()
}

/// Some `x` with `M x = b`, or `None` when `b` is not in the column space.
pub fn solve_in_image(m: &SparseMatrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if b.len() != m.rows() {
        return Err(Error::Dimension(format!("right-hand side of length {} for {} rows", b.len(), m.rows())));
    }
    let aug_col = m.cols();
    let rows: Vec<SparseVec> = m
        .row_vecs()
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            if !bi.is_zero() {
                r.push((aug_col, bi.clone()));
            }
            r
        })
        .collect();
    let rref = Rref::new(&rows, aug_col + 1);
    if rref.pivots.contains_key(&aug_col) {
        return Ok(None);
    }
    let mut x = vec![Scalar::ZERO; m.cols()];
    for (&p, row) in &rref.pivots {
        if let Some((_, v)) = row.iter().find(|(c, _)| *c == aug_col) {
            x[p] = v.clone();
        }
    }
    Ok(Some(x))
}

/// Incrementally built echelon basis of a subspace of `Q^dim`, supporting
/// membership tests and coordinates relative to the inserted generators.
#[derive(Debug, Clone)]
pub struct EchelonBasis {
    dim: usize,
    /// pivot column -> (row with leading 1, combination of accepted generators)
    rows: BTreeMap<usize, (SparseVec, SparseVec)>,
    accepted: usize,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        Self { dim, rows: BTreeMap::new(), accepted: 0 }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the basis; returns the residue and the
    /// combination of accepted generators that was subtracted.
    fn reduce(&self, v: &[(usize, Scalar)]) -> (SparseVec, SparseVec) {
        let mut r: SparseVec = v.to_vec();
        let mut used: SparseVec = Vec::new();
        let mut from = 0;
        loop {
            let hit = r.iter().find(|(c, _)| *c >= from && self.rows.contains_key(c)).map(|(c, x)| (*c, x.clone()));
            let Some((c, x)) = hit else { break };
            let (row, comb) = &self.rows[&c];
            r = axpy(&r, &-&x, row);
            used = axpy(&used, &x, comb);
            from = c + 1;
        }
        (r, used)
    }

    /// The part of `v` left after eliminating every pivot column; zero
    /// exactly when `v` lies in the span.
    pub fn residue(&self, v: &[(usize, Scalar)]) -> SparseVec {
        self.reduce(v).0
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    pub fn contains(&self, v: &[(usize, Scalar)]) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Inserts `v`; returns `true` if it was independent of the current span.
    pub fn insert(&mut self, v: &[(usize, Scalar)]) -> bool {
        let (r, used) = self.reduce(v);
        let Some((lead, x)) = r.first().cloned() else { return false };
        let inv = x.recip();
        let row: SparseVec = r.iter().map(|(c, y)| (*c, y * &inv)).collect();
        // row = (v - used) / x expressed through generators
        let mut comb = axpy(&[(self.accepted, Scalar::ONE)], &Scalar::from_int(-1), &used);
        comb = comb.into_iter().map(|(c, y)| (c, y * &inv)).collect();
        self.rows.insert(lead, (row, comb));
        self.accepted += 1;
        true
    }

    /// Coordinates of `v` in terms of the accepted generators (in insertion
    /// order), if `v` lies in the span.
    pub fn coordinates(&self, v: &[(usize, Scalar)]) -> Option<Vec<Scalar>> {
        let (r, used) = self.reduce(v);
        if !r.is_empty() {
            return None;
        }
        Some(sparse_to_dense(&used, self.accepted))
    }
}
