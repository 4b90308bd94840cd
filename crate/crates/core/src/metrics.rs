//! Bottleneck distance between diagrams and correspondence distortion between
//! dissimilarity matrices.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::coeff::Rational;
use crate::diagram::{Bar, DiagramKind, Extended, PersistenceDiagram};
use crate::directed::{directed_persistence, DEFAULT_CIRCUIT_BUDGET};
use crate::error::{Error, Result};
use crate::reduction::undirected_diagrams;
use crate::rips::{build_filtration, DissimilarityMatrix, DEFAULT_SIMPLEX_BUDGET};

/// `|V|^|W| · |W|^|V|` at `|V| = |W| = 5`.
pub const DEFAULT_MAP_PAIR_BUDGET: u128 = 9_765_625;

fn abs(a: &Rational, b: &Rational) -> Rational {
    if a >= b {
        a - b
    } else {
        b - a
    }
}

/// ℓ∞ distance between two diagram points.
fn point_cost(a: &Bar, b: &Bar) -> Extended {
    let birth = Extended::Finite(abs(&a.birth, &b.birth));
    birth.max(a.death.abs_diff(&b.death))
}

fn diagonal_cost(a: &Bar) -> Rational {
    match &a.death {
        Extended::Finite(d) => (d - &a.birth) / Rational::from_integer(2.into()),
        Extended::Infinite => unreachable!("infinite points never go to the diagonal"),
    }
}

fn expand(d: &PersistenceDiagram) -> Vec<Bar> {
    d.points().flat_map(|(b, m)| std::iter::repeat_n(b.clone(), m)).collect()
}

/// Exact bottleneck distance. Points at infinity must be matched among
/// themselves, so differing counts give `+∞`.
pub fn bottleneck(a: &PersistenceDiagram, b: &PersistenceDiagram) -> Extended {
    let (a_inf, a_fin): (Vec<Bar>, Vec<Bar>) = expand(a).into_iter().partition(|p| !p.death.is_finite());
    let (b_inf, b_fin): (Vec<Bar>, Vec<Bar>) = expand(b).into_iter().partition(|p| !p.death.is_finite());
    if a_inf.len() != b_inf.len() {
        return Extended::Infinite;
    }
    // on a line, pairing in sorted order minimises the largest gap
    let mut at_infinity = Rational::zero();
    for (p, q) in a_inf.iter().zip(&b_inf) {
        at_infinity = at_infinity.max(abs(&p.birth, &q.birth));
    }
    Extended::Finite(at_infinity.max(finite_bottleneck(&a_fin, &b_fin)))
}

fn finite_bottleneck(a: &[Bar], b: &[Bar]) -> Rational {
    let cost = |p: &Bar, q: &Bar| match point_cost(p, q) {
        Extended::Finite(c) => c,
        Extended::Infinite => unreachable!(),
    };
    let mut candidates: BTreeSet<Rational> = BTreeSet::new();
    candidates.insert(Rational::zero());
    for p in a {
        candidates.insert(diagonal_cost(p));
        for q in b {
            candidates.insert(cost(p, q));
        }
    }
    for q in b {
        candidates.insert(diagonal_cost(q));
    }
    let candidates: Vec<Rational> = candidates.into_iter().collect();

    let (n, m) = (a.len(), b.len());
    let a_diag: Vec<Rational> = a.iter().map(diagonal_cost).collect();
    let b_diag: Vec<Rational> = b.iter().map(diagonal_cost).collect();
    let pair: Vec<Vec<Rational>> = a.iter().map(|p| b.iter().map(|q| cost(p, q)).collect()).collect();
    // left: a points then diagonal copies of b points; right: b points then diagonal copies of a points
    let feasible = |t: &Rational| {
        let adj: Vec<Vec<usize>> = (0..n + m)
            .map(|l| {
                if l < n {
                    let mut e: Vec<usize> = (0..m).filter(|&j| &pair[l][j] <= t).collect();
                    if &a_diag[l] <= t {
                        e.push(m + l);
                    }
                    e
                } else {
                    let j = l - n;
                    let mut e = Vec::new();
                    if &b_diag[j] <= t {
                        e.push(j);
                    }
                    e.extend(m..m + n);
                    e
                }
            })
            .collect();
        perfect_matching(&adj, n + m)
    };
    let (mut lo, mut hi) = (0, candidates.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if feasible(&candidates[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    candidates[lo].clone()
}

/// Whether the bipartite graph (left `i` adjacent to `adj[i]`) has a
/// matching saturating every left vertex, by augmenting paths.
fn perfect_matching(adj: &[Vec<usize>], right: usize) -> bool {
    fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if owner[v].is_none_or(|w| augment(w, adj, seen, owner)) {
                owner[v] = Some(u);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; right];
    (0..adj.len()).all(|u| augment(u, adj, &mut vec![false; right], &mut owner))
}

/// `max |d_V(v₁,v₂) − d_W(w₁,w₂)|` over pairs of related pairs.
pub fn distortion(relation: &[(usize, usize)], dv: &DissimilarityMatrix, dw: &DissimilarityMatrix) -> Result<Rational> {
    if relation.is_empty() {
        return Err(Error::InvalidInput("relation is empty".into()));
    }
    if let Some(&(v, w)) = relation.iter().find(|&&(v, w)| v >= dv.len() || w >= dw.len()) {
        return Err(Error::InvalidInput(format!("pair ({v}, {w}) out of range")));
    }
    let mut worst = Rational::zero();
    for &(v1, w1) in relation {
        for &(v2, w2) in relation {
            worst = worst.max(abs(dv.get(v1, v2), dw.get(w1, w2)));
        }
    }
    Ok(worst)
}

/// A pair of maps `φ: V → W` and `ψ: W → V`, stored as index arrays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapPair {
    pub phi: Vec<usize>,
    pub psi: Vec<usize>,
}

impl MapPair {
    pub fn new(phi: Vec<usize>, psi: Vec<usize>) -> Result<Self> {
        if phi.iter().any(|&w| w >= psi.len()) || psi.iter().any(|&v| v >= phi.len()) {
            return Err(Error::InvalidInput("map value outside its codomain".into()));
        }
        Ok(MapPair { phi, psi })
    }

    fn check(&self, dv: &DissimilarityMatrix, dw: &DissimilarityMatrix) -> Result<()> {
        if self.phi.len() != dv.len() || self.psi.len() != dw.len() {
            return Err(Error::InvalidInput("map pair does not fit the matrices".into()));
        }
        Ok(())
    }

    /// Graph of `φ` together with the transposed graph of `ψ`.
    pub fn correspondence(&self) -> Vec<(usize, usize)> {
        let mut r: BTreeSet<(usize, usize)> = self.phi.iter().enumerate().map(|(v, &w)| (v, w)).collect();
        r.extend(self.psi.iter().enumerate().map(|(w, &v)| (v, w)));
        r.into_iter().collect()
    }
}

/// `max |d(x₁,x₂) − d'(f x₁, f x₂)|`.
pub fn map_distortion(f: &[usize], d: &DissimilarityMatrix, target: &DissimilarityMatrix) -> Rational {
    let mut worst = Rational::zero();
    for x1 in 0..d.len() {
        for x2 in 0..d.len() {
            worst = worst.max(abs(d.get(x1, x2), target.get(f[x1], f[x2])));
        }
    }
    worst
}

/// `(codis(φ,ψ), codis(ψ,φ))` where
/// `codis(φ,ψ) = max |d_V(v, ψ w) − d_W(φ v, w)|`.
pub fn codistortion(p: &MapPair, dv: &DissimilarityMatrix, dw: &DissimilarityMatrix) -> Result<(Rational, Rational)> {
    p.check(dv, dw)?;
    let (mut forward, mut backward) = (Rational::zero(), Rational::zero());
    for v in 0..dv.len() {
        for w in 0..dw.len() {
            forward = forward.max(abs(dv.get(v, p.psi[w]), dw.get(p.phi[v], w)));
            backward = backward.max(abs(dw.get(w, p.phi[v]), dv.get(p.psi[w], v)));
        }
    }
    Ok((forward, backward))
}

/// The four quantities for one map pair, maximised and halved.
pub fn map_pair_cost(p: &MapPair, dv: &DissimilarityMatrix, dw: &DissimilarityMatrix) -> Result<Rational> {
    let (c1, c2) = codistortion(p, dv, dw)?;
    let worst = map_distortion(&p.phi, dv, dw).max(map_distortion(&p.psi, dw, dv)).max(c1).max(c2);
    Ok(worst / Rational::from_integer(2.into()))
}

fn all_maps(from: usize, to: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..from {
        out = out.into_iter().flat_map(|m| (0..to).map(move |t| [m.as_slice(), &[t]].concat())).collect();
    }
    out
}

/// Correspondence distortion distance by exhaustive search over map pairs.
pub fn correspondence_distortion(dv: &DissimilarityMatrix, dw: &DissimilarityMatrix, budget: u128) -> Result<Rational> {
    let (n, m) = (dv.len(), dw.len());
    if n == 0 || m == 0 {
        return Err(Error::InvalidInput("empty dissimilarity matrix".into()));
    }
    let count = (m as u128)
        .checked_pow(n as u32)
        .and_then(|a| (n as u128).checked_pow(m as u32).and_then(|b| a.checked_mul(b)))
        .unwrap_or(u128::MAX);
    if count > budget {
        return Err(Error::Budget { what: "map pairs", count, budget });
    }

    // work with ranks of the finitely many possible differences
    let mut values: BTreeSet<Rational> = BTreeSet::new();
    for x in dv.rows().iter().flatten() {
        for y in dw.rows().iter().flatten() {
            values.insert(abs(x, y));
        }
    }
    let values: Vec<Rational> = values.into_iter().collect();
    let rank = |x: &Rational, y: &Rational| values.binary_search(&abs(x, y)).expect("difference was recorded");
    // cross[v][w][a][b] = rank of |d_V(v, a) − d_W(b, w)|
    let cross: Vec<Vec<usize>> = (0..n * m)
        .map(|vw| {
            let (v, w) = (vw / m, vw % m);
            (0..n * m).map(|ab| rank(dv.get(v, ab / m), dw.get(ab % m, w))).collect()
        })
        .collect();
    let cross_back: Vec<Vec<usize>> = (0..n * m)
        .map(|vw| {
            let (v, w) = (vw / m, vw % m);
            (0..n * m).map(|ab| rank(dw.get(w, ab % m), dv.get(ab / m, v))).collect()
        })
        .collect();
    let dis_rank = |f: &[usize], d: &DissimilarityMatrix, t: &DissimilarityMatrix| {
        let mut worst = 0;
        for x1 in 0..d.len() {
            for x2 in 0..d.len() {
                worst = worst.max(rank(d.get(x1, x2), t.get(f[x1], f[x2])));
            }
        }
        worst
    };
    let mut phis: Vec<(usize, Vec<usize>)> = all_maps(n, m).into_iter().map(|f| (dis_rank(&f, dv, dw), f)).collect();
    let mut psis: Vec<(usize, Vec<usize>)> = all_maps(m, n).into_iter().map(|g| (dis_rank(&g, dw, dv), g)).collect();
    phis.sort();
    psis.sort();

    let mut best = usize::MAX;
    for (dphi, phi) in &phis {
        if *dphi >= best {
            break;
        }
        for (dpsi, psi) in &psis {
            let floor = (*dphi).max(*dpsi);
            if floor >= best {
                break;
            }
            let mut worst = floor;
            'pairs: for v in 0..n {
                for w in 0..m {
                    let ab = psi[w] * m + phi[v];
                    worst = worst.max(cross[v * m + w][ab]).max(cross_back[v * m + w][ab]);
                    if worst >= best {
                        break 'pairs;
                    }
                }
            }
            best = best.min(worst);
        }
    }
    Ok(&values[best] / Rational::from_integer(2.into()))
}

/// Knobs for [`stability_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StabilityConfig {
    pub simplex_budget: u128,
    pub circuit_budget: usize,
    pub map_pair_budget: u128,
    pub directed: bool,
}

impl Default for StabilityConfig {
    fn default() -> Self {
        StabilityConfig {
            simplex_budget: DEFAULT_SIMPLEX_BUDGET,
            circuit_budget: DEFAULT_CIRCUIT_BUDGET,
            map_pair_budget: DEFAULT_MAP_PAIR_BUDGET,
            directed: true,
        }
    }
}

/// One compared pair of diagrams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityRow {
    pub dimension: usize,
    pub kind: DiagramKind,
    pub bottleneck: Extended,
    pub left: PersistenceDiagram,
    pub right: PersistenceDiagram,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    /// Exact distance, or the caller's upper bound when `exact` is false.
    pub distortion: Rational,
    pub exact: bool,
    pub rows: Vec<StabilityRow>,
}

impl StabilityReport {
    pub fn bound(&self) -> Rational {
        &self.distortion * Rational::from_integer(2.into())
    }

    pub fn holds(&self) -> bool {
        let bound = Extended::Finite(self.bound());
        self.rows.iter().all(|r| r.bottleneck <= bound)
    }
}

/// Compares the diagrams of two matrices in dimensions `0..=k` (and the
/// directed `Dgm₁` when `k ≥ 1`) against twice the correspondence distortion.
/// If `distortion_bound` is given it replaces the exhaustive computation.
pub fn stability_check(
    dv: &DissimilarityMatrix,
    dw: &DissimilarityMatrix,
    k: usize,
    distortion_bound: Option<Rational>,
    config: StabilityConfig,
) -> Result<StabilityReport> {
    let (distortion, exact) = match distortion_bound {
        Some(b) => (b, false),
        None => (correspondence_distortion(dv, dw, config.map_pair_budget)?, true),
    };
    let cap = (k + 1).max(2);
    let fv = build_filtration(dv, cap, config.simplex_budget)?;
    let fw = build_filtration(dw, cap, config.simplex_budget)?;
    let mut rows = Vec::new();
    for (dimension, (left, right)) in undirected_diagrams(&fv, k)?.into_iter().zip(undirected_diagrams(&fw, k)?).enumerate() {
        rows.push(StabilityRow { dimension, kind: DiagramKind::Undirected, bottleneck: bottleneck(&left, &right), left, right });
    }
    if k >= 1 && config.directed {
        let left = directed_persistence(&fv, config.circuit_budget)?;
        let right = directed_persistence(&fw, config.circuit_budget)?;
        rows.push(StabilityRow { dimension: 1, kind: DiagramKind::Directed, bottleneck: bottleneck(&left, &right), left, right });
    }
    Ok(StabilityReport { distortion, exact, rows })
}
