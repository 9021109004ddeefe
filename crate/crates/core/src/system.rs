//! Assembly of the linear systems behind every solver.
//!
//! Each solver searches for unknown rational coefficients `c` such that a
//! family of residual elements, linear in `c`, vanishes identically. Column
//! `u` of the system is the residual of the map whose only nonzero unknown
//! is `u = 1`; rows are indexed by (residual, generator, monomial).

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::element::ConformalElement;
use crate::linsolve::{nullspace, solve, RatMatrix, SolutionSpace};
use crate::poly::{Monomial, Rat};

type RowKey = (usize, usize, Monomial);

/// Flatten indexed residual elements into `(row key, value)` pairs.
pub(crate) fn flatten(residuals: &[(usize, ConformalElement)]) -> Vec<(RowKey, Rat)> {
    let mut out = Vec::new();
    for (r, el) in residuals {
        for (g, p) in el.coeffs().iter().enumerate() {
            for (m, c) in p.terms() {
                out.push(((*r, g, *m), c.clone()));
            }
        }
    }
    out
}

/// Kernel of the linear system whose columns are `column(u)` for
/// `u in 0..unknowns`. Columns are built in parallel and merged in index
/// order, so the result does not depend on scheduling. A column lists only
/// the residuals that can be nonzero, each tagged with its global index.
pub(crate) fn solve_homogeneous<F>(unknowns: usize, column: F) -> SolutionSpace
where
    F: Fn(usize) -> Vec<(usize, ConformalElement)> + Sync,
{
    let columns: Vec<Vec<(RowKey, Rat)>> = (0..unknowns)
        .into_par_iter()
        .map(|u| flatten(&column(u)))
        .collect();
    let mut rows: BTreeMap<RowKey, Vec<(usize, Rat)>> = BTreeMap::new();
    for (u, col) in columns.into_iter().enumerate() {
        for (key, x) in col {
            if !x.is_zero() {
                rows.entry(key).or_default().push((u, x));
            }
        }
    }
    let mut m = RatMatrix::new(unknowns);
    for (_, entries) in rows {
        m.push_sparse(entries);
    }
    nullspace(&m)
}

/// Assigns dense indices to sparse keys so keyed vectors from different
/// sources can be compared in one coordinate space.
#[derive(Debug, Default)]
pub(crate) struct KeyIndex<K: Ord + Clone> {
    keys: BTreeMap<K, usize>,
}

impl<K: Ord + Clone> KeyIndex<K> {
    pub fn new() -> Self {
        KeyIndex { keys: BTreeMap::new() }
    }

    pub fn register<'a, I: IntoIterator<Item = &'a K>>(&mut self, keys: I)
    where
        K: 'a,
    {
        for k in keys {
            let next = self.keys.len();
            self.keys.entry(k.clone()).or_insert(next);
        }
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn dense(&self, v: &BTreeMap<K, Rat>) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.keys.len()];
        for (k, x) in v {
            out[self.keys[k]] = x.clone();
        }
        out
    }
}

/// Coordinates of `target` in terms of `basis` (assumed independent), or
/// `None` if it is outside their span.
pub(crate) fn express_in<K: Ord + Clone>(basis: &[BTreeMap<K, Rat>], target: &BTreeMap<K, Rat>) -> Option<Vec<Rat>> {
    let mut index = KeyIndex::new();
    for b in basis {
        index.register(b.keys());
    }
    index.register(target.keys());
    let dense: Vec<Vec<Rat>> = basis.iter().map(|b| index.dense(b)).collect();
    let mut m = RatMatrix::new(basis.len());
    for row in 0..index.len() {
        m.push_sparse(dense.iter().enumerate().filter(|(_, col)| !col[row].is_zero()).map(|(c, col)| (c, col[row].clone())));
    }
    solve(&m, &index.dense(target))
}

/// Dimension of the span of keyed vectors.
pub(crate) fn span_rank<K: Ord + Clone>(vectors: &[BTreeMap<K, Rat>]) -> usize {
    let mut index = KeyIndex::new();
    for v in vectors {
        index.register(v.keys());
    }
    let mut m = RatMatrix::new(index.len());
    for v in vectors {
        m.push_sparse(v.iter().map(|(k, x)| (index.keys[k], x.clone())));
    }
    m.rank()
}
