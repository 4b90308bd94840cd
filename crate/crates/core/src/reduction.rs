//! Undirected persistence over ℚ by column reduction of the signed boundary
//! matrix.
//!
//! Column `j` of the boundary matrix stores `∂σⱼ = ∂⁺σⱼ − ∂⁻σⱼ` in terms of
//! earlier simplices of a compatible ordering, so the matrix is strictly
//! upper-triangular. A reducing operation adds a multiple of an earlier column
//! with the same lowest nonzero row.

use std::collections::HashMap;

use num_traits::Zero;

use crate::chain::RatChain;
use crate::coeff::Rational;
use crate::diagram::{Bar, Extended, PersistenceDiagram};
use crate::error::{Error, Result};
use crate::rips::FilteredComplex;

/// Sparse column, sorted by row index, no explicit zeros.
pub type Column = Vec<(usize, Rational)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseColumnMatrix {
    columns: Vec<Column>,
}

impl SparseColumnMatrix {
    pub fn from_columns(columns: Vec<Column>) -> Self {
        SparseColumnMatrix { columns }
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn column(&self, j: usize) -> &Column {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn low(&self, j: usize) -> Option<usize> {
        self.columns[j].last().map(|(i, _)| *i)
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.columns.iter().enumerate().all(|(j, c)| c.iter().all(|(i, _)| *i < j))
    }

    /// `true` when no two nonzero columns share a low index.
    pub fn is_reduced(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        (0..self.len()).filter_map(|j| self.low(j)).all(|l| seen.insert(l))
    }
}

/// Signed boundary matrix of a filtration in its compatible order.
pub fn boundary_matrix(f: &FilteredComplex) -> SparseColumnMatrix {
    let columns = f
        .iter()
        .map(|(s, _)| {
            if s.dim() == 0 {
                return Vec::new();
            }
            let boundary = RatChain::elementary(s.clone()).signed_boundary();
            let mut col: Column = boundary
                .terms()
                .map(|(face, c)| {
                    let row = f.index_of(face).expect("filtration is face-closed");
                    (row, c.clone())
                })
                .collect();
            col.sort_by_key(|(i, _)| *i);
            col
        })
        .collect();
    SparseColumnMatrix { columns }
}

/// `target ← target + factor · source`, both sorted.
fn axpy(target: &Column, factor: &Rational, source: &Column) -> Column {
    let mut out = Vec::with_capacity(target.len() + source.len());
    let (mut a, mut b) = (target.iter().peekable(), source.iter().peekable());
    loop {
        match (a.peek(), b.peek()) {
            (Some((i, x)), Some((k, y))) => {
                if i < k {
                    out.push((*i, x.clone()));
                    a.next();
                } else if k < i {
                    out.push((*k, factor * y));
                    b.next();
                } else {
                    let v = x + factor * y;
                    if !v.is_zero() {
                        out.push((*i, v));
                    }
                    a.next();
                    b.next();
                }
            }
            (Some((i, x)), None) => {
                out.push((*i, x.clone()));
                a.next();
            }
            (None, Some((k, y))) => {
                out.push((*k, factor * y));
                b.next();
            }
            (None, None) => break,
        }
    }
    out
}

/// Result of reducing a boundary matrix.
#[derive(Clone, Debug)]
pub struct ReducedMatrix {
    r: SparseColumnMatrix,
    pivot_of_low: HashMap<usize, usize>,
}

impl ReducedMatrix {
    fn from_reduced(r: SparseColumnMatrix) -> Self {
        let pivot_of_low = (0..r.len()).filter_map(|j| r.low(j).map(|l| (l, j))).collect();
        ReducedMatrix { r, pivot_of_low }
    }

    pub fn matrix(&self) -> &SparseColumnMatrix {
        &self.r
    }

    /// Column whose low is `row`, if any.
    pub fn column_with_low(&self, row: usize) -> Option<usize> {
        self.pivot_of_low.get(&row).copied()
    }

    /// Persistence pairs `(low, column)` sorted by column.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut p: Vec<_> = self.pivot_of_low.iter().map(|(&l, &j)| (l, j)).collect();
        p.sort_by_key(|&(_, j)| j);
        p
    }

    /// A zero column marks a positive simplex.
    pub fn is_positive(&self, j: usize) -> bool {
        self.r.column(j).is_empty()
    }
}

/// Standard left-to-right reduction.
pub fn reduce(m: &SparseColumnMatrix) -> ReducedMatrix {
    let mut columns = m.columns.clone();
    let mut owner: HashMap<usize, usize> = HashMap::new();
    for j in 0..columns.len() {
        while let Some((low, coef)) = columns[j].last().cloned() {
            let Some(&k) = owner.get(&low) else { break };
            let factor = -(coef / &columns[k].last().unwrap().1);
            columns[j] = axpy(&columns[j], &factor, &columns[k]);
        }
        if let Some(&(low, _)) = columns[j].last() {
            owner.insert(low, j);
        }
    }
    ReducedMatrix::from_reduced(SparseColumnMatrix { columns })
}

/// Reduction that repeatedly sweeps the columns in `order` (a permutation of
/// the column indices), eliminating each column's low against any earlier
/// column sharing it, until the matrix is reduced. Any order yields a valid
/// reduction; the resulting persistence pairs do not depend on it.
pub fn reduce_in_order(m: &SparseColumnMatrix, order: &[usize]) -> Result<ReducedMatrix> {
    let n = m.len();
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&j| j >= n || std::mem::replace(&mut seen[j], true)) {
        return Err(Error::InvalidInput("order is not a permutation of the columns".into()));
    }
    let mut columns = m.columns.clone();
    loop {
        let mut changed = false;
        for &j in order {
            loop {
                let Some((low, coef)) = columns[j].last().cloned() else { break };
                let earlier = (0..j).find(|&k| columns[k].last().is_some_and(|(l, _)| *l == low));
                let Some(k) = earlier else { break };
                let factor = -(coef / &columns[k].last().unwrap().1);
                columns[j] = axpy(&columns[j], &factor, &columns[k]);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(ReducedMatrix::from_reduced(SparseColumnMatrix { columns }))
}

/// Dimension-`k` persistence diagram read off a reduced boundary matrix.
/// Zero-length bars are omitted.
pub fn extract_diagram(r: &ReducedMatrix, f: &FilteredComplex, k: usize) -> Result<PersistenceDiagram> {
    if let Some(cap) = f.truncated_at() {
        if k >= cap {
            return Err(Error::InvalidInput(format!(
                "dimension {k} needs simplices of dimension {} but the filtration stops at {cap}",
                k + 1
            )));
        }
    }
    let mut dgm = PersistenceDiagram::new(k);
    for i in 0..f.len() {
        if f.simplex(i).dim() != k || !r.is_positive(i) {
            continue;
        }
        let birth = f.entrance(i).clone();
        let death = match r.column_with_low(i) {
            Some(j) => Extended::Finite(f.entrance(j).clone()),
            None => Extended::Infinite,
        };
        dgm.insert(Bar::new(birth, death), 1);
    }
    Ok(dgm)
}

/// Positive simplex counts per dimension and negative counts per dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexCensus {
    pub positive: Vec<usize>,
    pub negative: Vec<usize>,
}

impl SimplexCensus {
    /// `#positive_k − #negative_{k+1}`: the k-th Betti number of the final complex.
    pub fn betti(&self, k: usize) -> usize {
        let pos = self.positive.get(k).copied().unwrap_or(0);
        let neg = self.negative.get(k + 1).copied().unwrap_or(0);
        pos - neg
    }
}

pub fn census(r: &ReducedMatrix, f: &FilteredComplex) -> SimplexCensus {
    let top = f.max_dim().map_or(0, |d| d + 1);
    let mut census = SimplexCensus { positive: vec![0; top], negative: vec![0; top] };
    for j in 0..f.len() {
        let d = f.simplex(j).dim();
        if r.is_positive(j) {
            census.positive[d] += 1;
        } else {
            census.negative[d] += 1;
        }
    }
    census
}

/// Convenience: all undirected diagrams of dimensions `0..=max_dim`.
pub fn undirected_diagrams(f: &FilteredComplex, max_dim: usize) -> Result<Vec<PersistenceDiagram>> {
    let r = reduce(&boundary_matrix(f));
    (0..=max_dim).map(|k| extract_diagram(&r, f, k)).collect()
}
