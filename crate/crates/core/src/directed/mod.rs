//! Directed persistence in dimension one.
//!
//! Over a zerosumfree semiring the 1-cycles of a directed complex are exactly
//! the nonnegative combinations of elementary circuits of its 1-skeleton. The
//! directed submodule of `H₁(X_δ; ℚ)` at each scale is therefore spanned by the
//! classes of those circuits. Ranks of the structure maps restricted to it
//! give a rank function, and bar multiplicities follow by inclusion–exclusion.

pub mod circuits;

use std::collections::BTreeMap;

use crate::chain::{NatChain, RatChain};
use crate::coeff::Rational;
use crate::complex::DirectedSimplex;
use crate::diagram::{Bar, Extended, PersistenceDiagram};
use crate::error::{Error, Result};
use crate::linalg::{EchelonBasis, SparseVector};
use crate::rips::FilteredComplex;

pub use circuits::elementary_circuit_paths;

pub const DEFAULT_CIRCUIT_BUDGET: usize = 100_000;

/// Elementary circuits of the digraph whose arcs are the given 1-simplices,
/// each as a 0/1 chain over ℕ.
pub fn elementary_circuits(edges: &[DirectedSimplex], budget: usize) -> Result<Vec<NatChain>> {
    let mut arcs = Vec::with_capacity(edges.len());
    for e in edges {
        if e.dim() != 1 {
            return Err(Error::DimensionMismatch { expected: 1, found: e.dim() });
        }
        arcs.push((e.vertices()[0], e.vertices()[1]));
    }
    elementary_circuit_paths(&arcs, budget)?
        .into_iter()
        .map(|path| NatChain::sum_of(1, path_edges(&path)))
        .collect()
}

fn path_edges(path: &[usize]) -> impl Iterator<Item = DirectedSimplex> + '_ {
    (0..path.len()).map(move |i| DirectedSimplex::edge(path[i], path[(i + 1) % path.len()]))
}

/// Circuits present at one scale and an echelon basis of their signed span.
#[derive(Clone, Debug)]
pub struct CircuitBasis {
    pub delta: Rational,
    pub circuits: Vec<NatChain>,
    pub span_basis: Vec<RatChain>,
}

impl CircuitBasis {
    pub fn rank(&self) -> usize {
        self.span_basis.len()
    }
}

fn chain_coordinates(c: &RatChain, f: &FilteredComplex) -> SparseVector {
    c.terms()
        .map(|(s, x)| (f.index_of(s).expect("chain lives in the filtration"), x.clone()))
        .collect()
}

fn coordinates_to_chain(v: &SparseVector, f: &FilteredComplex, dim: usize) -> RatChain {
    RatChain::from_terms(dim, v.iter().map(|(i, x)| (f.simplex(*i).clone(), x.clone())))
        .expect("coordinates index simplices of one dimension")
}

fn sublevel_edges(f: &FilteredComplex, delta: &Rational) -> Vec<DirectedSimplex> {
    f.iter()
        .take(f.prefix_len(delta))
        .filter(|(s, _)| s.dim() == 1)
        .map(|(s, _)| s.clone())
        .collect()
}

/// Directed cycle space of the sublevel complex at `delta`.
pub fn directed_space(f: &FilteredComplex, delta: &Rational, budget: usize) -> Result<CircuitBasis> {
    let circuits = elementary_circuits(&sublevel_edges(f, delta), budget)?;
    let mut basis = EchelonBasis::new();
    for c in &circuits {
        basis.insert(chain_coordinates(&c.to_rational(), f));
    }
    let span_basis = basis.rows().map(|v| coordinates_to_chain(v, f, 1)).collect();
    Ok(CircuitBasis { delta: delta.clone(), circuits, span_basis })
}

/// Ranks `r(i, j)` of the maps from the directed subspace at the `i`-th
/// critical value into `H₁` at the `j`-th, for `i <= j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankFunction {
    critical_values: Vec<Rational>,
    r: Vec<Vec<usize>>,
}

impl RankFunction {
    /// Builds a rank function from an explicit upper-triangular table, where
    /// `table[i][j - i]` holds `r(i, j)`.
    pub fn from_table(critical_values: Vec<Rational>, table: Vec<Vec<usize>>) -> Result<Self> {
        let m = critical_values.len();
        if table.len() != m || table.iter().enumerate().any(|(i, row)| row.len() != m - i) {
            return Err(Error::InvalidInput("rank table must be upper triangular".into()));
        }
        Ok(RankFunction { critical_values, r: table })
    }

    pub fn critical_values(&self) -> &[Rational] {
        &self.critical_values
    }

    pub fn len(&self) -> usize {
        self.critical_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.critical_values.is_empty()
    }

    /// `r(i, j)` for `i <= j`.
    pub fn rank(&self, i: usize, j: usize) -> usize {
        assert!(i <= j, "rank function is defined for i <= j");
        self.r[i][j - i]
    }

    /// Rank at the scale `delta`'s position in the critical values, if present.
    pub fn position(&self, delta: &Rational) -> Option<usize> {
        self.critical_values.binary_search(delta).ok()
    }

    /// Checks the monotonicity expected of the rank function of a submodule.
    pub fn is_monotone(&self) -> bool {
        let m = self.len();
        (0..m).all(|i| {
            (i..m).all(|j| {
                (j + 1 >= m || self.rank(i, j) >= self.rank(i, j + 1))
                    && (i + 1 > j || self.rank(i, j) <= self.rank(i + 1, j))
            })
        })
    }
}

/// Rank function of the directed persistence module of `f` in dimension one.
pub fn rank_function(f: &FilteredComplex, budget: usize) -> Result<RankFunction> {
    if f.truncated_at().is_some_and(|cap| cap < 2) {
        return Err(Error::InvalidInput("directed persistence needs simplices up to dimension 2".into()));
    }
    let values = f.critical_values();
    let spaces = values
        .iter()
        .map(|delta| directed_space(f, delta, budget))
        .collect::<Result<Vec<_>>>()?;
    let span_vectors: Vec<Vec<SparseVector>> = spaces
        .iter()
        .map(|sp| sp.span_basis.iter().map(|c| chain_coordinates(c, f)).collect())
        .collect();

    let mut boundaries = EchelonBasis::new();
    let mut next = 0;
    let mut table: Vec<Vec<usize>> = vec![Vec::new(); values.len()];
    for (j, delta) in values.iter().enumerate() {
        let end = f.prefix_len(delta);
        for k in next..end {
            if f.simplex(k).dim() == 2 {
                let b = RatChain::elementary(f.simplex(k).clone()).signed_boundary();
                boundaries.insert(chain_coordinates(&b, f));
            }
        }
        next = end;
        for (i, row) in table.iter_mut().enumerate().take(j + 1) {
            let mut joint = boundaries.clone();
            let rank = span_vectors[i].iter().filter(|v| joint.insert((*v).clone())).count();
            row.push(rank);
        }
    }
    Ok(RankFunction { critical_values: values, r: table })
}

/// Persistence diagram of a rank function by inclusion–exclusion:
/// `μ[δᵢ, δⱼ) = r(i, j−1) − r(i, j) − r(i−1, j−1) + r(i−1, j)` with
/// `r(−1, ·) = 0`; bars alive at the last critical value never die.
pub fn directed_diagram(rf: &RankFunction) -> PersistenceDiagram {
    diagram_from_ranks(1, rf)
}

pub(crate) fn diagram_from_ranks(dimension: usize, rf: &RankFunction) -> PersistenceDiagram {
    let m = rf.len();
    let r = |i: isize, j: usize| -> i64 {
        if i < 0 {
            0
        } else {
            rf.rank(i as usize, j) as i64
        }
    };
    let mut dgm = PersistenceDiagram::new(dimension);
    let values = rf.critical_values();
    for i in 0..m {
        let ii = i as isize;
        for j in i + 1..m {
            let mu = r(ii, j - 1) - r(ii, j) - r(ii - 1, j - 1) + r(ii - 1, j);
            assert!(mu >= 0, "negative multiplicity {mu} for [{}, {})", values[i], values[j]);
            dgm.insert(Bar::finite(values[i].clone(), values[j].clone()), mu as usize);
        }
        let mu = r(ii, m - 1) - r(ii - 1, m - 1);
        assert!(mu >= 0, "negative multiplicity {mu} for [{}, inf)", values[i]);
        dgm.insert(Bar::infinite(values[i].clone()), mu as usize);
    }
    dgm
}

/// Directed `Dgm₁` of a filtration.
pub fn directed_persistence(f: &FilteredComplex, budget: usize) -> Result<PersistenceDiagram> {
    Ok(directed_diagram(&rank_function(f, budget)?))
}

/// An injective assignment of directed bars to undirected bars with equal
/// death and no later birth.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubbarcodeMatching {
    pub pairs: Vec<(Bar, Bar)>,
    pub unmatched_undirected: Vec<Bar>,
}

/// Directed bars that could not be matched, alongside the partial matching.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatchFailure {
    pub unmatched_directed: Vec<Bar>,
    pub partial: SubbarcodeMatching,
}

/// Matches every directed bar to an undirected bar dying at the same time and
/// born no later. Within a death value, directed bars are taken by increasing
/// birth and each receives the latest-born unused undirected bar that still
/// precedes it.
pub fn subbarcode_match(
    directed: &PersistenceDiagram,
    undirected: &PersistenceDiagram,
) -> std::result::Result<SubbarcodeMatching, MatchFailure> {
    let mut pool: BTreeMap<Extended, Vec<Bar>> = BTreeMap::new();
    for b in undirected.bars() {
        pool.entry(b.death.clone()).or_default().push(b);
    }
    let mut pairs = Vec::new();
    let mut unmatched_directed = Vec::new();
    // bars() is sorted by birth, so each group is too
    for d in directed.bars() {
        let group = pool.entry(d.death.clone()).or_default();
        match group.iter().rposition(|u| u.birth <= d.birth) {
            Some(k) => pairs.push((d, group.remove(k))),
            None => unmatched_directed.push(d),
        }
    }
    let mut unmatched_undirected: Vec<Bar> = pool.into_values().flatten().collect();
    unmatched_undirected.sort();
    let matching = SubbarcodeMatching { pairs, unmatched_undirected };
    if unmatched_directed.is_empty() {
        Ok(matching)
    } else {
        Err(MatchFailure { unmatched_directed, partial: matching })
    }
}
