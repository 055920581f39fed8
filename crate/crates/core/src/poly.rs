//! Dense univariate polynomials in `t`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::coeff::{binomial, write_terms, Rational, Ring};

/// `Σ cₖ tᵏ` with no trailing zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: R) -> Self {
        Poly::new(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(R::one())
    }

    /// `c·tᵏ`.
    pub fn monomial(c: R, k: usize) -> Self {
        let mut coeffs = vec![R::zero(); k + 1];
        coeffs[k] = c;
        Poly::new(coeffs)
    }

    /// The polynomial `t`.
    pub fn t() -> Self {
        Poly::monomial(R::one(), 1)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &R) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly::new(self.coeffs.iter().map(|a| a.times(c)).collect())
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.scaled(q)).collect())
    }

    /// `tᵏ·p(t)`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![R::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn derivative(&self) -> Self {
        self.derivative_over_factorial(1)
    }

    /// `p⁽ⁱ⁾(t) / i!`, which has integer binomial weights `C(k, i)`.
    pub fn derivative_over_factorial(&self, i: usize) -> Self {
        if i == 0 {
            return self.clone();
        }
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(i)
                .map(|(k, c)| c.scaled(&binomial(k, i)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &R) -> R {
        self.coeffs
            .iter()
            .rev()
            .fold(R::zero(), |acc, c| acc.times(x).plus(c))
    }

    /// `p(q·t)`.
    pub fn dilate(&self, q: &R) -> Self {
        let mut power = R::one();
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            coeffs.push(c.times(&power));
            power = power.times(q);
        }
        Poly::new(coeffs)
    }

    /// `p(t + x)`.
    pub fn translate(&self, x: &R) -> Self {
        let mut acc = Poly::zero();
        let shift = Poly::new(vec![x.clone(), R::one()]);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &shift) + &Poly::constant(c.clone());
        }
        acc
    }

    /// Exact division by `t` when the constant term vanishes.
    pub fn div_t(&self) -> Option<Self> {
        match self.coeffs.first() {
            None => Some(Poly::zero()),
            Some(c) if c.is_zero() => Some(Poly::new(self.coeffs[1..].to_vec())),
            Some(_) => None,
        }
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    /// Terms in the descending-power display convention, the variable written `var`.
    pub fn display_terms(&self, var: &str) -> Vec<(Rational, String)> {
        let mut out = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            let tpow = match k {
                0 => String::new(),
                1 => String::from(var),
                _ => alloc::format!("{var}^{k}"),
            };
            for (q, mono) in c.monomials() {
                let m = match (mono.is_empty(), tpow.is_empty()) {
                    (true, _) => tpow.clone(),
                    (false, true) => mono,
                    (false, false) => alloc::format!("{mono}*{tpow}"),
                };
                out.push((q, m));
            }
        }
        out
    }

    pub fn display_in(&self, var: &'static str) -> impl fmt::Display + '_ {
        DisplayIn { poly: self, var }
    }
}

struct DisplayIn<'a, R> {
    poly: &'a Poly<R>,
    var: &'static str,
}

impl<R: Ring> fmt::Display for DisplayIn<'_, R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.poly.display_terms(self.var))
    }
}

impl<R: Ring> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.display_terms("t"))
    }
}

impl<R: Ring> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl<R: Ring> Add for &Poly<R> {
    type Output = Poly<R>;
    fn add(self, rhs: &Poly<R>) -> Poly<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k).plus(&rhs.coeff(k))).collect())
    }
}

impl<R: Ring> Sub for &Poly<R> {
    type Output = Poly<R>;
    fn sub(self, rhs: &Poly<R>) -> Poly<R> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k).minus(&rhs.coeff(k))).collect())
    }
}

impl<R: Ring> Mul for &Poly<R> {
    type Output = Poly<R>;
    fn mul(self, rhs: &Poly<R>) -> Poly<R> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].plus(&a.times(b));
                }
            }
        }
        Poly::new(coeffs)
    }
}

impl<R: Ring> Neg for &Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly::new(self.coeffs.iter().map(Ring::negated).collect())
    }
}
