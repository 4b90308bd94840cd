//! Chains and the paired differentials.
//!
//! For an elementary chain `[x0,…,xn]`, `∂⁺` sums the faces obtained by
//! removing an even-indexed vertex and `∂⁻` those obtained by removing an
//! odd-indexed vertex. A chain is a cycle when the two agree. Over ℚ the usual
//! signed boundary is `∂⁺ − ∂⁻`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::coeff::{Coefficient, Natural, Rational};
use crate::complex::{DirectedComplex, DirectedSimplex};
use crate::error::{Error, Result};

/// A finite formal sum of `dim`-simplices. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Chain<C> {
    dim: usize,
    terms: BTreeMap<DirectedSimplex, C>,
}

pub type NatChain = Chain<Natural>;
pub type RatChain = Chain<Rational>;

impl<C: Coefficient> Chain<C> {
    pub fn zero(dim: usize) -> Self {
        Chain { dim, terms: BTreeMap::new() }
    }

    pub fn elementary(s: DirectedSimplex) -> Self {
        let mut c = Self::zero(s.dim());
        c.terms.insert(s, C::one());
        c
    }

    /// Builds a chain from `(simplex, coefficient)` terms; repeated simplices accumulate.
    pub fn from_terms<I>(dim: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (DirectedSimplex, C)>,
    {
        let mut c = Self::zero(dim);
        for (s, coef) in terms {
            if s.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: s.dim() });
            }
            c.add_term(s, &coef);
        }
        Ok(c)
    }

    /// Sum of elementary chains with unit coefficients (a 0/1 chain when the
    /// simplices are distinct).
    pub fn sum_of<I>(dim: usize, simplices: I) -> Result<Self>
    where
        I: IntoIterator<Item = DirectedSimplex>,
    {
        Self::from_terms(dim, simplices.into_iter().map(|s| (s, C::one())))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DirectedSimplex, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, s: &DirectedSimplex) -> C {
        self.terms.get(s).cloned().unwrap_or_else(C::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = &DirectedSimplex> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, s: DirectedSimplex, coef: &C) {
        debug_assert_eq!(s.dim(), self.dim);
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(s) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coef;
                if e.get().is_zero() {
                    e.remove();
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coef.clone());
            }
        }
    }

    pub fn add_chain(&mut self, other: &Self) {
        assert_eq!(self.dim, other.dim);
        for (s, c) in &other.terms {
            self.add_term(s.clone(), c);
        }
    }

    pub fn scaled(&self, k: &C) -> Self {
        let mut out = Self::zero(self.dim);
        for (s, c) in &self.terms {
            out.add_term(s.clone(), &(c.clone() * k));
        }
        out
    }

    fn parity_boundary(&self, parity: usize) -> Self {
        if self.dim == 0 {
            return Self::zero(0);
        }
        let mut out = Self::zero(self.dim - 1);
        for (s, c) in &self.terms {
            for i in (parity..=self.dim).step_by(2) {
                out.add_term(s.face(i), c);
            }
        }
        out
    }

    /// `∂⁺`: removes the even-indexed vertices. Trivial in dimension 0.
    pub fn boundary_pos(&self) -> Self {
        self.parity_boundary(0)
    }

    /// `∂⁻`: removes the odd-indexed vertices. Trivial in dimension 0.
    pub fn boundary_neg(&self) -> Self {
        self.parity_boundary(1)
    }

    pub fn is_cycle(&self) -> bool {
        self.boundary_pos() == self.boundary_neg()
    }

    /// Image under the completion map.
    pub fn to_rational(&self) -> RatChain {
        let mut out = RatChain::zero(self.dim);
        for (s, c) in &self.terms {
            out.add_term(s.clone(), &c.to_rational());
        }
        out
    }

    /// Sum of all coefficients: the functional sending every elementary chain to 1.
    pub fn coefficient_sum(&self) -> C {
        let mut total = C::zero();
        for c in self.terms.values() {
            total += c;
        }
        total
    }
}

impl RatChain {
    /// Signed boundary `∂⁺ − ∂⁻`.
    pub fn signed_boundary(&self) -> Self {
        let mut out = self.boundary_pos();
        for (s, c) in self.boundary_neg().terms {
            out.add_term(s, &-c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scaled(&-Rational::one())
    }
}

impl<C: Coefficient + fmt::Display> fmt::Debug for Chain<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (s, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{s:?}")?;
            } else {
                write!(f, "{c}·{s:?}")?;
            }
        }
        Ok(())
    }
}

/// Checks `∂⁺∂⁺ + ∂⁻∂⁻ = ∂⁺∂⁻ + ∂⁻∂⁺` over ℕ on every elementary chain of
/// dimension at most `max_dim`.
pub fn verify_chain_complex(x: &DirectedComplex, max_dim: usize) -> bool {
    x.all_simplices().filter(|s| s.dim() <= max_dim).all(|s| {
        let e = NatChain::elementary(s.clone());
        let (pos, neg) = (e.boundary_pos(), e.boundary_neg());
        let mut lhs = pos.boundary_pos();
        lhs.add_chain(&neg.boundary_neg());
        let mut rhs = pos.boundary_neg();
        rhs.add_chain(&neg.boundary_pos());
        lhs == rhs
    })
}
