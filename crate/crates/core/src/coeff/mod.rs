//! Exact coefficient rings.
//!
//! Everything in the crate is generic over [`Ring`], a commutative algebra
//! over the rationals with a notion of units. Two concrete rings are
//! provided: [`Rational`] and [`ParamPoly`] (polynomials in named formal
//! parameters). [`RingElement`] is the tagged union used at API boundaries
//! where the ring is chosen at run time.

mod element;
mod param;
mod rational;

use core::fmt::{Debug, Display};

pub use element::RingElement;
pub use param::ParamPoly;
pub use rational::Rational;

/// A commutative ring containing the rationals, with exact equality.
///
/// Method names avoid the `core::ops` names so that types implementing both
/// never resolve ambiguously.
pub trait Ring: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    /// Multiplicative inverse, if `self` is a unit.
    fn inverse(&self) -> Option<Self>;
    fn from_rational(q: Rational) -> Self;
    fn scaled(&self, q: &Rational) -> Self;

    /// Expansion into `(coefficient, monomial)` pairs for display, highest
    /// degree first. The monomial string is empty for the constant term.
    fn monomials(&self) -> alloc::vec::Vec<(Rational, alloc::string::String)>;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// `self += a·b`.
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self = self.plus(&a.times(b));
    }

    fn from_i64(n: i64) -> Self {
        Self::from_rational(Rational::from(n))
    }

    fn is_unit(&self) -> bool {
        self.inverse().is_some()
    }

    fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.times(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.times(&base);
            }
        }
        acc
    }
}

/// `n!` as an exact rational.
pub fn factorial(n: usize) -> Rational {
    let mut acc = num_bigint::BigInt::from(1u32);
    for k in 2..=n {
        acc *= k;
    }
    Rational::from(acc)
}

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> Rational {
    if k > n {
        return Rational::from(0);
    }
    let k = k.min(n - k);
    let mut acc = num_bigint::BigInt::from(1u32);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    Rational::from(acc)
}

/// Writes `c₀·m₀ ± c₁·m₁ ± …` in the `2*z^2 - 4*y` style; `0` for no terms.
pub(crate) fn write_terms(
    f: &mut core::fmt::Formatter<'_>,
    terms: alloc::vec::Vec<(Rational, alloc::string::String)>,
) -> core::fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (i, (coef, mono)) in terms.iter().enumerate() {
        let negative = coef.is_negative();
        match (i, negative) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        let mag = coef.abs();
        if mono.is_empty() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            f.write_str(mono)?;
        } else {
            write!(f, "{mag}*{mono}")?;
        }
    }
    Ok(())
}
