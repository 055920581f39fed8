use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{ParamPoly, Rational, Ring};
use crate::error::{Error, Result};

/// A coefficient whose ring is chosen at run time.
///
/// A computation fixes one ring for all of its operands; combining a
/// `Rational` with a `Param` is a [`Error::RingMismatch`].
#[derive(Clone, PartialEq, Eq)]
pub enum RingElement {
    Rational(Rational),
    Param(ParamPoly),
}

impl RingElement {
    pub fn try_add(&self, other: &RingElement) -> Result<RingElement> {
        match (self, other) {
            (RingElement::Rational(a), RingElement::Rational(b)) => Ok(RingElement::Rational(a + b)),
            (RingElement::Param(a), RingElement::Param(b)) => Ok(RingElement::Param(a.plus(b))),
            _ => Err(Error::RingMismatch),
        }
    }

    pub fn try_sub(&self, other: &RingElement) -> Result<RingElement> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &RingElement) -> Result<RingElement> {
        match (self, other) {
            (RingElement::Rational(a), RingElement::Rational(b)) => Ok(RingElement::Rational(a * b)),
            (RingElement::Param(a), RingElement::Param(b)) => Ok(RingElement::Param(a.times(b))),
            _ => Err(Error::RingMismatch),
        }
    }

    pub fn neg(&self) -> RingElement {
        match self {
            RingElement::Rational(a) => RingElement::Rational(-a),
            RingElement::Param(a) => RingElement::Param(a.negated()),
        }
    }

    pub fn try_inv(&self) -> Result<RingElement> {
        match self {
            RingElement::Rational(a) => a.recip().map(RingElement::Rational),
            RingElement::Param(a) => a.inverse().map(RingElement::Param),
        }
        .ok_or(Error::NotAUnit)
    }

    pub fn is_unit(&self) -> bool {
        self.try_inv().is_ok()
    }

    pub fn is_zero(&self) -> bool {
        match self {
            RingElement::Rational(a) => a.is_zero(),
            RingElement::Param(a) => a.is_zero(),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            RingElement::Rational(a) => Some(a),
            RingElement::Param(_) => None,
        }
    }

    pub fn as_param(&self) -> Option<&ParamPoly> {
        match self {
            RingElement::Param(a) => Some(a),
            RingElement::Rational(_) => None,
        }
    }

    /// Evaluate at rational parameter values; rationals pass through.
    pub fn substitute(&self, assignment: &[(&str, Rational)]) -> Result<Rational> {
        match self {
            RingElement::Rational(a) => Ok(a.clone()),
            RingElement::Param(p) => p.substitute(assignment),
        }
    }

    pub fn monomials(&self) -> Vec<(Rational, String)> {
        match self {
            RingElement::Rational(a) => a.monomials(),
            RingElement::Param(p) => p.monomials(),
        }
    }
}

impl From<Rational> for RingElement {
    fn from(q: Rational) -> Self {
        RingElement::Rational(q)
    }
}

impl From<ParamPoly> for RingElement {
    fn from(p: ParamPoly) -> Self {
        RingElement::Param(p)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElement::Rational(a) => fmt::Display::fmt(a, f),
            RingElement::Param(p) => fmt::Display::fmt(p, f),
        }
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElement::Rational(a) => write!(f, "Rational({a})"),
            RingElement::Param(p) => write!(f, "Param({p})"),
        }
    }
}
