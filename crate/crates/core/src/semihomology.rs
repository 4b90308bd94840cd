//! Homology over the semiring ℕ at desk scale.
//!
//! `H₀` is computed exactly from weak connectivity and `Z₁` is generated by
//! elementary circuits. Everything else (the homologous relation, cycles in
//! dimensions two and up) is explored by bounded exhaustive enumeration, so a
//! negative answer is only ever "none within the bound".
//!
//! Because ℕ is cancellative, `x + ∂⁺u + ∂⁻v = y + ∂⁺v + ∂⁻u` holds exactly
//! when `x − y = ∂(v − u)` in ℤ. The searches therefore run over integer
//! vectors against the signed boundary.

use num_traits::{ToPrimitive, Zero};

use crate::chain::NatChain;
use crate::coeff::Natural;
use crate::complex::{DirectedComplex, DirectedSimplex};
use crate::directed::{elementary_circuits, DEFAULT_CIRCUIT_BUDGET};
use crate::error::{Error, Result};

pub const DEFAULT_SEARCH_BOUND: u32 = 3;
pub const DEFAULT_ENUMERATION_BUDGET: u128 = 20_000_000;

/// Coefficient bound and maximum number of coefficient vectors visited.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchLimits {
    pub bound: u32,
    pub budget: u128,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { bound: DEFAULT_SEARCH_BOUND, budget: DEFAULT_ENUMERATION_BUDGET }
    }
}

impl SearchLimits {
    pub fn with_bound(bound: u32) -> Self {
        SearchLimits { bound, ..Self::default() }
    }
}

/// Rank of `H₀(X; ℕ) ≅ ℕᵏ`: the number of weakly connected components.
pub fn h0_rank(x: &DirectedComplex) -> usize {
    x.weak_components().len()
}

/// Pair `(u, v)` with `x + ∂⁺u + ∂⁻v = y + ∂⁺v + ∂⁻u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologousWitness {
    pub u: NatChain,
    pub v: NatChain,
}

impl HomologousWitness {
    /// Checks the defining equation over ℕ.
    pub fn certifies(&self, x: &NatChain, y: &NatChain) -> bool {
        let mut lhs = x.clone();
        lhs.add_chain(&self.u.boundary_pos());
        lhs.add_chain(&self.v.boundary_neg());
        let mut rhs = y.clone();
        rhs.add_chain(&self.v.boundary_pos());
        rhs.add_chain(&self.u.boundary_neg());
        lhs == rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Homologous {
    Yes(HomologousWitness),
    /// No witness with coefficients up to the bound. Not a proof.
    NoWithinBound,
}

impl Homologous {
    pub fn is_yes(&self) -> bool {
        matches!(self, Homologous::Yes(_))
    }
}

/// Signed boundary of the `dim`-simplices of `x` as small integer columns
/// over the `(dim−1)`-simplices.
struct IntegerBoundary {
    domain: Vec<DirectedSimplex>,
    codomain: Vec<DirectedSimplex>,
    columns: Vec<Vec<(usize, i64)>>,
}

impl IntegerBoundary {
    fn new(x: &DirectedComplex, dim: usize) -> Self {
        let domain: Vec<DirectedSimplex> = x.simplices(dim).cloned().collect();
        let codomain: Vec<DirectedSimplex> = if dim == 0 { Vec::new() } else { x.simplices(dim - 1).cloned().collect() };
        let columns = domain
            .iter()
            .map(|s| {
                let mut col: Vec<(usize, i64)> = Vec::new();
                for i in 0..=s.dim() {
                    if s.dim() == 0 {
                        break;
                    }
                    let row = codomain.binary_search(&s.face(i)).expect("complex is face-closed");
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    match col.iter_mut().find(|(r, _)| *r == row) {
                        Some(entry) => entry.1 += sign,
                        None => col.push((row, sign)),
                    }
                }
                col.retain(|(_, c)| *c != 0);
                col
            })
            .collect();
        IntegerBoundary { domain, codomain, columns }
    }

    /// Visits every `w ∈ values^k` with `∂w = target`, in odometer order,
    /// until `visit` returns `false`.
    fn solutions(
        &self,
        target: &[i64],
        values: &[i64],
        budget: u128,
        mut visit: impl FnMut(&[i64]) -> bool,
    ) -> Result<()> {
        let k = self.columns.len();
        let count = (values.len() as u128).checked_pow(k as u32).unwrap_or(u128::MAX);
        if count > budget {
            return Err(Error::Budget { what: "coefficient vectors", count, budget });
        }
        // residual = target − ∂w, starting from w = values[0]^k
        let mut residual = target.to_vec();
        let mut w = vec![values[0]; k];
        for (i, col) in self.columns.iter().enumerate() {
            for &(r, c) in col {
                residual[r] -= c * w[i];
            }
        }
        let mut nonzero = residual.iter().filter(|x| **x != 0).count();
        let mut digits = vec![0usize; k];
        loop {
            if nonzero == 0 && !visit(&w) {
                return Ok(());
            }
            let mut i = 0;
            loop {
                if i == k {
                    return Ok(());
                }
                let old = w[i];
                digits[i] += 1;
                let wrapped = digits[i] == values.len();
                if wrapped {
                    digits[i] = 0;
                }
                w[i] = values[digits[i]];
                let delta = w[i] - old;
                for &(r, c) in &self.columns[i] {
                    let before = residual[r] != 0;
                    residual[r] -= c * delta;
                    let after = residual[r] != 0;
                    match (before, after) {
                        (true, false) => nonzero -= 1,
                        (false, true) => nonzero += 1,
                        _ => {}
                    }
                }
                if !wrapped {
                    break;
                }
                i += 1;
            }
        }
    }

    fn coordinates(&self, c: &NatChain) -> Result<Vec<i64>> {
        let mut v = vec![0i64; self.codomain.len()];
        for (s, coef) in c.terms() {
            let i = self.codomain.binary_search(s).map_err(|_| {
                Error::InvalidInput(format!("simplex {s:?} is not in the complex"))
            })?;
            v[i] = coef
                .to_i64()
                .ok_or_else(|| Error::InvalidInput("coefficient too large for enumeration".into()))?;
        }
        Ok(v)
    }

    fn chain(&self, w: &[i64], keep: impl Fn(i64) -> i64) -> NatChain {
        let terms = self
            .domain
            .iter()
            .zip(w)
            .map(|(s, &c)| (s.clone(), Natural::from(keep(c) as u64)))
            .filter(|(_, c)| !c.is_zero());
        NatChain::from_terms(self.domain.first().map_or(0, DirectedSimplex::dim), terms)
            .expect("simplices share a dimension")
    }
}

fn signed_values(bound: u32) -> Vec<i64> {
    let mut v = vec![0];
    for b in 1..=bound as i64 {
        v.push(b);
        v.push(-b);
    }
    v
}

/// Searches for a witness that two `n`-cycles of `x` are homologous over ℕ,
/// with witness coefficients at most `limits.bound`.
pub fn is_homologous(x: &DirectedComplex, a: &NatChain, b: &NatChain, limits: SearchLimits) -> Result<Homologous> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch { expected: a.dim(), found: b.dim() });
    }
    if !a.is_cycle() || !b.is_cycle() {
        return Err(Error::NotACycle);
    }
    let n = a.dim();
    let boundary = IntegerBoundary::new(x, n + 1);
    // codomain of ∂_{n+1} is all n-simplices of x
    let codomain = IntegerBoundary { domain: Vec::new(), codomain: x.simplices(n).cloned().collect(), columns: Vec::new() };
    let (ca, cb) = (codomain.coordinates(a)?, codomain.coordinates(b)?);
    let target: Vec<i64> = ca.iter().zip(&cb).map(|(p, q)| p - q).collect();
    let boundary = IntegerBoundary { codomain: codomain.codomain, ..boundary };

    let mut found = None;
    boundary.solutions(&target, &signed_values(limits.bound), limits.budget, |w| {
        found = Some(w.to_vec());
        false
    })?;
    Ok(match found {
        Some(w) => {
            let dim = n + 1;
            let empty = || NatChain::zero(dim);
            let u = if boundary.domain.is_empty() { empty() } else { boundary.chain(&w, |c| (-c).max(0)) };
            let v = if boundary.domain.is_empty() { empty() } else { boundary.chain(&w, |c| c.max(0)) };
            let witness = HomologousWitness { u, v };
            debug_assert!(witness.certifies(a, b));
            Homologous::Yes(witness)
        }
        None => Homologous::NoWithinBound,
    })
}

/// Generators of `Z₁(X; ℕ)`: the elementary circuits of the 1-skeleton.
pub fn z1_generators(x: &DirectedComplex) -> Result<Vec<NatChain>> {
    z1_generators_with_budget(x, DEFAULT_CIRCUIT_BUDGET)
}

pub fn z1_generators_with_budget(x: &DirectedComplex, budget: usize) -> Result<Vec<NatChain>> {
    let edges: Vec<DirectedSimplex> = x.simplices(1).cloned().collect();
    elementary_circuits(&edges, budget)
}

/// Nonzero cycles over ℕ in dimension `dim` with coefficients at most the bound.
pub fn bounded_cycles(x: &DirectedComplex, dim: usize, limits: SearchLimits) -> Result<Vec<NatChain>> {
    let boundary = IntegerBoundary::new(x, dim);
    if boundary.domain.is_empty() {
        return Ok(Vec::new());
    }
    let values: Vec<i64> = (0..=limits.bound as i64).collect();
    let target = vec![0; boundary.codomain.len()];
    let mut out = Vec::new();
    boundary.solutions(&target, &values, limits.budget, |w| {
        if w.iter().any(|c| *c != 0) {
            out.push(boundary.chain(w, |c| c));
        }
        true
    })?;
    Ok(out)
}

/// Checks that `x` has no nonzero cycle of the given even dimension within
/// the bound, and that the coefficient-sum functional separates `∂⁺` from
/// `∂⁻` on every elementary chain (which rules out cycles for any bound).
pub fn even_cycles_trivial(x: &DirectedComplex, dim: usize, limits: SearchLimits) -> Result<bool> {
    if dim < 2 || dim % 2 != 0 {
        return Err(Error::InvalidInput(format!("dimension {dim} is not an even number >= 2")));
    }
    let separated = x.simplices(dim).all(|s| {
        let e = NatChain::elementary(s.clone());
        e.boundary_pos().coefficient_sum() == e.boundary_neg().coefficient_sum() + Natural::from(1u8)
    });
    if !separated {
        return Ok(false);
    }
    let boundary = IntegerBoundary::new(x, dim);
    if boundary.domain.is_empty() {
        return Ok(true);
    }
    let values: Vec<i64> = (0..=limits.bound as i64).collect();
    let target = vec![0; boundary.codomain.len()];
    let mut nontrivial = false;
    boundary.solutions(&target, &values, limits.budget, |w| {
        // any solution has coefficient sum 0, hence is the zero vector
        nontrivial = w.iter().any(|c| *c != 0);
        !nontrivial
    })?;
    Ok(!nontrivial)
}

/// Verifies acyclicity of the closure of one ordered `m`-simplex within the
/// bound: one weak component, every 1-cycle generator and every bounded
/// odd-dimensional cycle homologous to zero, and no even-dimensional cycles.
pub fn is_acyclic_full_simplex(m: usize, limits: SearchLimits) -> Result<bool> {
    if !(1..=4).contains(&m) {
        return Err(Error::InvalidInput(format!("simplex dimension {m} outside 1..=4")));
    }
    let x = DirectedComplex::close([DirectedSimplex::new((0..=m).collect::<Vec<_>>())]);
    if h0_rank(&x) != 1 {
        return Ok(false);
    }
    for c in z1_generators(&x)? {
        if !is_homologous(&x, &c, &NatChain::zero(1), limits)?.is_yes() {
            return Ok(false);
        }
    }
    for dim in 2..=m {
        if dim % 2 == 0 {
            if !even_cycles_trivial(&x, dim, limits)? {
                return Ok(false);
            }
        } else {
            for c in bounded_cycles(&x, dim, limits)? {
                if !is_homologous(&x, &c, &NatChain::zero(dim), limits)?.is_yes() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
