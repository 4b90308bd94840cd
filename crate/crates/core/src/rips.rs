//! Dissimilarity functions and their directed Rips filtrations.
//!
//! A tuple `(v0,…,vn)` is present at scale `δ` when `d(vi, vj) <= δ` for all
//! `i <= j`. Diagonal entries therefore gate vertices, and the order of the
//! tuple matters when `d` is asymmetric.

use std::collections::{BTreeSet, HashMap};

use crate::coeff::Rational;
use crate::complex::{DirectedComplex, DirectedSimplex};
use crate::error::{Error, Result};

pub const DEFAULT_DIM_CAP: usize = 2;
pub const DEFAULT_SIMPLEX_BUDGET: u128 = 5_000_000;

/// A finite dissimilarity function `d: V × V → ℚ` with no further assumptions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DissimilarityMatrix {
    d: Vec<Vec<Rational>>,
}

impl DissimilarityMatrix {
    pub fn new(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::InvalidInput(format!(
                "row {i} has {} entries, expected {n}",
                r.len()
            )));
        }
        Ok(DissimilarityMatrix { d: rows })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Rational) -> Self {
        DissimilarityMatrix { d: (0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect() }
    }

    pub fn len(&self) -> usize {
        self.d.len()
    }

    pub fn is_empty(&self) -> bool {
        self.d.is_empty()
    }

    /// Dissimilarity from `i` to `j`.
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.d[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.d
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..i).all(|j| self.d[i][j] == self.d[j][i]))
    }
}

/// Filtration value of a tuple: the maximum of `d(ti, tj)` over `i <= j`.
pub fn entrance_value(t: &DirectedSimplex, d: &DissimilarityMatrix) -> Rational {
    let v = t.vertices();
    let mut best = d.get(v[0], v[0]).clone();
    for j in 0..v.len() {
        for k in j..v.len() {
            let x = d.get(v[j], v[k]);
            if *x > best {
                best = x.clone();
            }
        }
    }
    best
}

/// A finite filtered directed complex listed in a compatible order: faces
/// before cofaces and earlier entrance before later entrance. Ties are broken
/// by dimension, then lexicographically.
#[derive(Clone, Debug)]
pub struct FilteredComplex {
    simplices: Vec<(DirectedSimplex, Rational)>,
    index: HashMap<DirectedSimplex, usize>,
    truncated_at: Option<usize>,
}

impl FilteredComplex {
    /// Builds a filtration from explicit entrance values. Faces missing from
    /// the input are added; every face enters no later than its earliest coface.
    pub fn from_entrances<I, S>(entries: I) -> Self
    where
        I: IntoIterator<Item = (S, Rational)>,
        S: Into<DirectedSimplex>,
    {
        let mut values: HashMap<DirectedSimplex, Rational> = HashMap::new();
        for (s, a) in entries {
            lower(&mut values, s.into(), a);
        }
        let mut by_dim: Vec<Vec<DirectedSimplex>> = Vec::new();
        for s in values.keys() {
            if by_dim.len() <= s.dim() {
                by_dim.resize_with(s.dim() + 1, Vec::new);
            }
            by_dim[s.dim()].push(s.clone());
        }
        for d in (1..by_dim.len()).rev() {
            let layer = std::mem::take(&mut by_dim[d]);
            for s in &layer {
                let a = values[s].clone();
                for i in 0..=d {
                    let f = s.face(i);
                    if !values.contains_key(&f) {
                        by_dim[d - 1].push(f.clone());
                    }
                    lower(&mut values, f, a.clone());
                }
            }
            by_dim[d] = layer;
        }
        Self::sorted(values.into_iter().collect(), None)
    }

    fn sorted(mut simplices: Vec<(DirectedSimplex, Rational)>, truncated_at: Option<usize>) -> Self {
        simplices.sort_by(|(s, a), (t, b)| a.cmp(b).then(s.dim().cmp(&t.dim())).then(s.cmp(t)));
        let index = simplices.iter().enumerate().map(|(i, (s, _))| (s.clone(), i)).collect();
        FilteredComplex { simplices, index, truncated_at }
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplex(&self, i: usize) -> &DirectedSimplex {
        &self.simplices[i].0
    }

    pub fn entrance(&self, i: usize) -> &Rational {
        &self.simplices[i].1
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DirectedSimplex, &Rational)> {
        self.simplices.iter().map(|(s, a)| (s, a))
    }

    pub fn index_of(&self, s: &DirectedSimplex) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// `Some(k)` when only simplices up to dimension `k` were generated, so
    /// homology is reliable only below `k`.
    pub fn truncated_at(&self) -> Option<usize> {
        self.truncated_at
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.simplices.iter().map(|(s, _)| s.dim()).max()
    }

    /// Distinct entrance values in increasing order.
    pub fn critical_values(&self) -> Vec<Rational> {
        let set: BTreeSet<&Rational> = self.simplices.iter().map(|(_, a)| a).collect();
        set.into_iter().cloned().collect()
    }

    /// Indices of the simplices present at scale `delta`. Because the order
    /// is compatible this is always a prefix.
    pub fn prefix_len(&self, delta: &Rational) -> usize {
        self.simplices.partition_point(|(_, a)| a <= delta)
    }

    pub fn sublevel(&self, delta: &Rational) -> DirectedComplex {
        DirectedComplex::close(self.simplices[..self.prefix_len(delta)].iter().map(|(s, _)| s.clone()))
    }

    /// Whole complex at the final stage.
    pub fn complex(&self) -> DirectedComplex {
        DirectedComplex::close(self.simplices.iter().map(|(s, _)| s.clone()))
    }

    /// Checks both compatibility conditions and entrance monotonicity.
    pub fn is_compatible(&self) -> bool {
        let sorted = self.simplices.windows(2).all(|w| w[0].1 <= w[1].1);
        let faces_first = self.simplices.iter().enumerate().all(|(j, (s, a))| {
            s.dim() == 0
                || (0..=s.dim()).all(|i| {
                    self.index_of(&s.face(i)).is_some_and(|k| k < j && self.entrance(k) <= a)
                })
        });
        sorted && faces_first
    }
}

fn lower(values: &mut HashMap<DirectedSimplex, Rational>, s: DirectedSimplex, a: Rational) {
    values
        .entry(s)
        .and_modify(|cur| {
            if a < *cur {
                *cur = a.clone();
            }
        })
        .or_insert(a);
}

/// Number of tuples of length `1..=dim_cap+1` over `n` vertices, saturating.
pub fn tuple_count(n: usize, dim_cap: usize) -> u128 {
    let mut total: u128 = 0;
    let mut layer: u128 = 1;
    for _ in 0..=dim_cap {
        layer = layer.saturating_mul(n as u128);
        total = total.saturating_add(layer);
    }
    total
}

/// Directed Rips filtration with every tuple of length at most `dim_cap + 1`.
pub fn build_filtration(d: &DissimilarityMatrix, dim_cap: usize, budget: u128) -> Result<FilteredComplex> {
    let count = tuple_count(d.len(), dim_cap);
    if count > budget {
        return Err(Error::Budget { what: "simplex count", count, budget });
    }
    let n = d.len();
    let mut out = Vec::with_capacity(count as usize);
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..=dim_cap {
        let mut next = Vec::with_capacity(layer.len() * n);
        for t in &layer {
            for v in 0..n {
                let mut u = t.clone();
                u.push(v);
                next.push(u);
            }
        }
        for t in &next {
            let s = DirectedSimplex::new(t.clone());
            let a = entrance_value(&s, d);
            out.push((s, a));
        }
        layer = next;
    }
    Ok(FilteredComplex::sorted(out, Some(dim_cap)))
}
