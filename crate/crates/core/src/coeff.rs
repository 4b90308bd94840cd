//! Exact coefficient arithmetic.
//!
//! Two coefficient systems are used throughout the crate: the natural numbers,
//! a cancellative zerosumfree semiring with no additive inverses, and the exact
//! rationals, which contain its Grothendieck completion. Completed elements are
//! stored as their canonical signed representative rather than as formal pairs.

use std::fmt::Debug;
use std::ops::{AddAssign, Mul};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision natural number.
pub type Natural = BigUint;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Canonical representative `u - v` of the formal difference `[u, v]`.
pub fn complete(u: &Natural, v: &Natural) -> Rational {
    let diff = BigInt::from(u.clone()) - BigInt::from(v.clone());
    Rational::from_integer(diff)
}

/// Product in the completion. On canonical representatives the pair rule
/// `[x1,x2]·[y1,y2] = [x1y1 + x2y2, x2y1 + x1y2]` is ordinary signed multiplication.
pub fn completion_mul(a: &Rational, b: &Rational) -> Rational {
    a * b
}

/// Embeds a natural number into the rationals (`[u, 0]`).
pub fn natural_to_rational(u: &Natural) -> Rational {
    Rational::from_integer(BigInt::from(u.clone()))
}

/// Shorthand for an integral rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `num / den`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

mod sealed {
    pub trait Sealed {}
    impl Sealed for super::Natural {}
    impl Sealed for super::Rational {}
}

/// Coefficient systems a [`Chain`](crate::chain::Chain) may carry: ℕ or ℚ.
pub trait Coefficient:
    sealed::Sealed
    + Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + for<'a> AddAssign<&'a Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// Image in the rationals under the completion map.
    fn to_rational(&self) -> Rational;
}

impl Coefficient for Natural {
    fn to_rational(&self) -> Rational {
        natural_to_rational(self)
    }
}

impl Coefficient for Rational {
    fn to_rational(&self) -> Rational {
        self.clone()
    }
}
