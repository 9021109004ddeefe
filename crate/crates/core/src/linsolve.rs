//! Exact linear algebra over the rationals.
//!
//! Matrices are stored as sparse rows, since the systems produced by
//! coefficient-equating are tall and mostly zero. Every result is brought
//! to reduced row echelon form, which is unique for a given row space, so
//! solution bases are reproducible.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::poly::Rat;

type SparseRow = Vec<(usize, Rat)>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RatMatrix {
    cols: usize,
    rows: Vec<SparseRow>,
}

impl RatMatrix {
    /// An empty matrix with `cols` columns and no rows.
    pub fn new(cols: usize) -> Self {
        RatMatrix { cols, rows: Vec::new() }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            cols,
            rows: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        RatMatrix {
            cols: n,
            rows: (0..n).map(|i| vec![(i, Rat::one())]).collect(),
        }
    }

    pub fn from_dense(cols: usize, rows: Vec<Vec<Rat>>) -> Self {
        let mut m = RatMatrix::new(cols);
        for r in rows {
            assert_eq!(r.len(), cols, "row length does not match column count");
            m.push_dense(&r);
        }
        m
    }

    pub fn from_ints(cols: usize, rows: &[&[i64]]) -> Self {
        RatMatrix::from_dense(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| crate::poly::int(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn push_dense(&mut self, row: &[Rat]) {
        debug_assert_eq!(row.len(), self.cols);
        self.rows.push(
            row.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect(),
        );
    }

    /// Append a row given as `(column, value)` pairs in any order; repeated
    /// columns are summed.
    pub fn push_sparse<I: IntoIterator<Item = (usize, Rat)>>(&mut self, entries: I) {
        let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
        for (c, x) in entries {
            assert!(c < self.cols, "column {c} out of range");
            *acc.entry(c).or_insert_with(Rat::zero) += x;
        }
        self.rows
            .push(acc.into_iter().filter(|(_, x)| !x.is_zero()).collect());
    }

    pub fn get(&self, r: usize, c: usize) -> Rat {
        self.rows[r]
            .iter()
            .find(|(j, _)| *j == c)
            .map(|(_, x)| x.clone())
            .unwrap_or_else(Rat::zero)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.cols);
        self.rows
            .iter()
            .map(|row| row.iter().fold(Rat::zero(), |acc, (c, x)| acc + x * &v[*c]))
            .collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rat>> {
        self.rows
            .iter()
            .map(|row| {
                let mut d = vec![Rat::zero(); self.cols];
                for (c, x) in row {
                    d[*c] = x.clone();
                }
                d
            })
            .collect()
    }

    /// Matrix product `self · other`.
    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows());
        let mut out = RatMatrix::new(other.cols);
        for row in &self.rows {
            let mut acc: BTreeMap<usize, Rat> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &other.rows[*k] {
                    *acc.entry(*j).or_insert_with(Rat::zero) += a * b;
                }
            }
            out.rows
                .push(acc.into_iter().filter(|(_, x)| !x.is_zero()).collect());
        }
        out
    }

    pub fn rank(&self) -> usize {
        rref(self.cols, self.rows.iter().cloned()).len()
    }
}

/// `row -= factor * other`, both sorted by column.
fn axpy(row: &SparseRow, factor: &Rat, other: &SparseRow) -> SparseRow {
    let mut out = Vec::with_capacity(row.len() + other.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < other.len() {
        let ci = row.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = other.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ci < cj {
            out.push(row[i].clone());
            i += 1;
        } else if cj < ci {
            out.push((cj, -(factor * &other[j].1)));
            j += 1;
        } else {
            let x = &row[i].1 - factor * &other[j].1;
            if !x.is_zero() {
                out.push((ci, x));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn normalize(row: &mut SparseRow) {
    if let Some((_, lead)) = row.first() {
        let inv = lead.recip();
        for (_, x) in row.iter_mut() {
            *x = &*x * &inv;
        }
    }
}

/// Reduced row echelon form of the given rows, as `(pivot column, row)`
/// pairs sorted by pivot column. Rows are folded in one at a time against
/// the pivots seen so far, then back-substituted.
fn rref<I: IntoIterator<Item = SparseRow>>(_cols: usize, rows: I) -> Vec<(usize, SparseRow)> {
    let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for mut row in rows {
        while let Some((lead, x)) = row.first().cloned() {
            match pivots.get(&lead) {
                Some(p) => row = axpy(&row, &x, p),
                None => break,
            }
        }
        if !row.is_empty() {
            normalize(&mut row);
            pivots.insert(row[0].0, row);
        }
    }
    // Back-substitute from the rightmost pivot so each pivot column is
    // cleared in every other row.
    let cols: Vec<usize> = pivots.keys().rev().cloned().collect();
    for (idx, &pc) in cols.iter().enumerate() {
        let prow = pivots[&pc].clone();
        for &other in &cols[idx + 1..] {
            let r = pivots.get_mut(&other).unwrap();
            if let Some((_, x)) = r.iter().find(|(c, _)| *c == pc).cloned() {
                *r = axpy(r, &x, &prow);
            }
        }
    }
    pivots.into_iter().collect()
}

/// A subspace of ℚⁿ held as its unique RREF basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSpace {
    ambient: usize,
    basis: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl SolutionSpace {
    pub fn zero(ambient: usize) -> Self {
        SolutionSpace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        SolutionSpace::span_of(
            ambient,
            (0..ambient).map(|i| {
                let mut v = vec![Rat::zero(); ambient];
                v[i] = Rat::one();
                v
            }),
        )
    }

    /// The span of arbitrary vectors, normalized.
    pub fn span_of<I: IntoIterator<Item = Vec<Rat>>>(ambient: usize, vectors: I) -> Self {
        let rows = vectors.into_iter().map(|v| {
            assert_eq!(v.len(), ambient, "vector length does not match ambient dimension");
            v.into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .collect::<SparseRow>()
        });
        let reduced = rref(ambient, rows);
        let mut basis = Vec::with_capacity(reduced.len());
        let mut pivots = Vec::with_capacity(reduced.len());
        for (p, row) in reduced {
            let mut d = vec![Rat::zero(); ambient];
            for (c, x) in row {
                d[c] = x;
            }
            basis.push(d);
            pivots.push(p);
        }
        SolutionSpace { ambient, basis, pivots }
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the normalized basis, or `None` when `v` is
    /// outside the span.
    pub fn in_span(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(v.len(), self.ambient, "vector length does not match ambient dimension");
        let coeffs: Vec<Rat> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = vec![Rat::zero(); self.ambient];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (r, x) in rebuilt.iter_mut().zip(b) {
                *r += c * x;
            }
        }
        (rebuilt.as_slice() == v).then_some(coeffs)
    }

    /// True when every basis vector of `other` lies in `self`.
    pub fn contains(&self, other: &SolutionSpace) -> bool {
        other.basis.iter().all(|b| self.in_span(b).is_some())
    }
}

/// Exact kernel of `m`.
pub fn nullspace(m: &RatMatrix) -> SolutionSpace {
    let n = m.cols;
    let reduced = rref(n, m.rows.iter().cloned());
    let pivot_cols: Vec<usize> = reduced.iter().map(|(p, _)| *p).collect();
    let mut is_pivot = vec![false; n];
    for &p in &pivot_cols {
        is_pivot[p] = true;
    }
    let kernel = (0..n).filter(|&f| !is_pivot[f]).map(|f| {
        let mut v = vec![Rat::zero(); n];
        v[f] = Rat::one();
        for (p, row) in &reduced {
            if let Some((_, x)) = row.iter().find(|(c, _)| *c == f) {
                v[*p] = -x.clone();
            }
        }
        v
    });
    SolutionSpace::span_of(n, kernel.collect::<Vec<_>>())
}

/// One solution of `a·x = b` (free variables set to zero), or `None` when
/// the system is inconsistent.
pub fn solve(a: &RatMatrix, b: &[Rat]) -> Option<Vec<Rat>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length does not match row count");
    let n = a.cols;
    let augmented = a.rows.iter().zip(b).map(|(row, rhs)| {
        let mut r = row.clone();
        if !rhs.is_zero() {
            r.push((n, rhs.clone()));
        }
        r
    });
    let reduced = rref(n + 1, augmented);
    let mut x = vec![Rat::zero(); n];
    for (p, row) in reduced {
        if p == n {
            return None;
        }
        if let Some((_, rhs)) = row.iter().find(|(c, _)| *c == n) {
            x[p] = rhs.clone();
        }
    }
    Some(x)
}
