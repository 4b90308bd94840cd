//! Exact sparse linear algebra over ℚ.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::coeff::Rational;

/// A sparse vector: coordinate index → nonzero rational.
pub type SparseVector = BTreeMap<usize, Rational>;

/// Incrementally maintained echelon basis of a subspace of ℚⁿ. Each stored
/// row is normalised so that its highest nonzero coordinate (the pivot) is 1,
/// and no two rows share a pivot.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: BTreeMap<usize, SparseVector>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> impl Iterator<Item = &SparseVector> {
        self.rows.values()
    }

    /// Reduces `v` against the basis, returning the (possibly zero) remainder.
    pub fn reduce(&self, mut v: SparseVector) -> SparseVector {
        v.retain(|_, c| !c.is_zero());
        // Pivots strictly decrease as we eliminate from the top.
        let mut bound = usize::MAX;
        while let Some((&pivot, _)) = v.range(..=bound).next_back() {
            match self.rows.get(&pivot) {
                Some(row) => {
                    let factor = v[&pivot].clone();
                    for (i, c) in row {
                        let entry = v.entry(*i).or_insert_with(Rational::zero);
                        *entry -= &factor * c;
                        if entry.is_zero() {
                            v.remove(i);
                        }
                    }
                }
                None => {
                    if pivot == 0 {
                        break;
                    }
                    bound = pivot - 1;
                    continue;
                }
            }
        }
        v
    }

    /// Inserts `v`; returns `true` when it was independent of the current rows.
    pub fn insert(&mut self, v: SparseVector) -> bool {
        let r = self.reduce(v);
        let Some((&pivot, lead)) = r.iter().next_back() else {
            return false;
        };
        let inv = Rational::one() / lead;
        let row: SparseVector = r.iter().map(|(i, c)| (*i, c * &inv)).collect();
        self.rows.insert(pivot, row);
        true
    }

    pub fn contains(&self, v: &SparseVector) -> bool {
        self.reduce(v.clone()).is_empty()
    }
}

/// Rank of a family of vectors.
pub fn rank<I: IntoIterator<Item = SparseVector>>(vectors: I) -> usize {
    let mut basis = EchelonBasis::new();
    for v in vectors {
        basis.insert(v);
    }
    basis.rank()
}
