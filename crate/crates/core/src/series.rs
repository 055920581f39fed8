//! Truncated formal power series and the homomorphisms `g ↦ g(B)`.
//!
//! Coefficients are always ordinary: a series of order `N` stores
//! `a₀, …, a_{N-1}` with `g = Σ aₖ xᵏ + O(xᴺ)`. Exponential-type inputs go
//! through [`PowerSeries::from_egf`] or [`PowerSeries::from_cegf`].

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::coeff::{factorial, Rational, Ring};
use crate::error::{Error, Result};
use crate::matrix::{MatrixIndex, TruncMatrix};
use crate::poly::Poly;

#[derive(Clone, PartialEq)]
pub struct PowerSeries<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> PowerSeries<R> {
    /// The series with the given coefficients; its order is their count.
    pub fn new(coeffs: Vec<R>) -> Self {
        PowerSeries { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries { coeffs: vec![R::zero(); order] }
    }

    pub fn constant(c: R, order: usize) -> Self {
        let mut s = PowerSeries::zero(order);
        if order > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    pub fn one(order: usize) -> Self {
        PowerSeries::constant(R::one(), order)
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        PowerSeries::from_poly(&Poly::t(), order)
    }

    pub fn from_poly(p: &Poly<R>, order: usize) -> Self {
        PowerSeries { coeffs: (0..order).map(|k| p.coeff(k)).collect() }
    }

    /// `Σ fₖ xᵏ/k!` from the exponential coefficients `fₖ`.
    pub fn from_egf(f: &[R]) -> Self {
        PowerSeries {
            coeffs: f
                .iter()
                .enumerate()
                .map(|(k, c)| c.scaled(&factorial(k).recip().expect("k! is nonzero")))
                .collect(),
        }
    }

    /// `Σ gₖ xᵏ/f_c(k)` from the c-exponential coefficients `gₖ`.
    pub fn from_cegf(c: &CFactorial<R>, g: &[R]) -> Result<Self> {
        let coeffs = g
            .iter()
            .enumerate()
            .map(|(k, gk)| Ok(gk.times(c.inverse_factorial(k)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(PowerSeries { coeffs })
    }

    /// `eˣ`.
    pub fn exponential(order: usize) -> Self {
        PowerSeries::from_egf(&vec![R::one(); order])
    }

    /// `exp(c₁x + c₂x² + …)`.
    pub fn exp_poly(cs: &[R], order: usize) -> Self {
        let mut inner = vec![R::zero(); order];
        for (k, c) in cs.iter().enumerate() {
            if k + 1 < order {
                inner[k + 1] = c.clone();
            }
        }
        PowerSeries::new(inner).exp().expect("constant term is zero")
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    /// Coefficient of `xᵏ`. Panics when `k` is beyond the truncation order.
    pub fn coeff(&self, k: usize) -> &R {
        &self.coeffs[k]
    }

    /// `k!·aₖ`, the exponential coefficients.
    pub fn egf_coeffs(&self) -> Vec<R> {
        self.coeffs.iter().enumerate().map(|(k, a)| a.scaled(&factorial(k))).collect()
    }

    /// `f_c(k)·aₖ`, the c-exponential coefficients.
    pub fn cegf_coeffs(&self, c: &CFactorial<R>) -> Result<Vec<R>> {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| Ok(a.times(c.factorial(k)?)))
            .collect()
    }

    pub fn truncate(&self, order: usize) -> Self {
        PowerSeries { coeffs: self.coeffs[..order.min(self.order())].to_vec() }
    }

    pub fn to_poly(&self) -> Poly<R> {
        Poly::new(self.coeffs.clone())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> PowerSeries<S> {
        PowerSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        PowerSeries { coeffs: (0..n).map(|k| self.coeffs[k].plus(&other.coeffs[k])).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        PowerSeries { coeffs: (0..n).map(|k| self.coeffs[k].minus(&other.coeffs[k])).collect() }
    }

    pub fn neg(&self) -> Self {
        self.map(Ring::negated)
    }

    pub fn scale(&self, c: &R) -> Self {
        self.map(|a| a.times(c))
    }

    /// Truncated Cauchy product at the smaller of the two orders.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = vec![R::zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].plus(&a.times(b));
                }
            }
        }
        PowerSeries { coeffs: out }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = PowerSeries::one(self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; needs a unit constant term.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.order();
        let Some(a0) = self.coeffs.first() else {
            return Ok(PowerSeries::zero(0));
        };
        let inv0 = a0.inverse().ok_or(Error::NotAUnit)?;
        let mut b: Vec<R> = Vec::with_capacity(n);
        b.push(inv0.clone());
        for k in 1..n {
            let mut acc = R::zero();
            for i in 1..=k {
                if !self.coeffs[i].is_zero() {
                    acc = acc.plus(&self.coeffs[i].times(&b[k - i]));
                }
            }
            b.push(acc.times(&inv0).negated());
        }
        Ok(PowerSeries { coeffs: b })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Formal derivative; the order drops by one since the top coefficient
    /// of the derivative is not determined by the truncation.
    pub fn derivative(&self) -> Self {
        PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a.scaled(&Rational::from(k as i64)))
                .collect(),
        }
    }

    /// Antiderivative with zero constant term; the order grows by one.
    pub fn integrate(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.order() + 1);
        coeffs.push(R::zero());
        for (k, a) in self.coeffs.iter().enumerate() {
            coeffs.push(a.scaled(&Rational::new(1, k as i64 + 1)));
        }
        PowerSeries { coeffs }
    }

    /// `exp(a)` for `a₀ = 0`, from `n·bₙ = Σ k·aₖ·b_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        let n = self.order();
        if n == 0 {
            return Ok(self.clone());
        }
        if !self.coeffs[0].is_zero() {
            return Err(Error::Precondition("exp needs a zero constant term"));
        }
        let mut b: Vec<R> = Vec::with_capacity(n);
        b.push(R::one());
        for m in 1..n {
            let mut acc = R::zero();
            for k in 1..=m {
                if !self.coeffs[k].is_zero() {
                    acc = acc.plus(&self.coeffs[k].scaled(&Rational::from(k as i64)).times(&b[m - k]));
                }
            }
            b.push(acc.scaled(&Rational::new(1, m as i64)));
        }
        Ok(PowerSeries { coeffs: b })
    }

    /// `log(a)` for `a₀ = 1`, as the integral of `a′/a`.
    pub fn log(&self) -> Result<Self> {
        if self.order() == 0 {
            return Ok(self.clone());
        }
        if !self.coeffs[0].is_one() {
            return Err(Error::Precondition("log needs constant term one"));
        }
        Ok(self.derivative().div(self)?.integrate())
    }

    /// `self(inner(x))` for `inner₀ = 0`.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let n = self.order().min(inner.order());
        if n == 0 {
            return Ok(PowerSeries::zero(0));
        }
        if !inner.coeffs[0].is_zero() {
            return Err(Error::Precondition("inner series needs a zero constant term"));
        }
        let inner = inner.truncate(n);
        let mut acc = PowerSeries::constant(self.coeffs[n - 1].clone(), n);
        for k in (0..n - 1).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = acc.coeffs[0].plus(&self.coeffs[k]);
        }
        Ok(acc)
    }

    /// Compositional inverse by Lagrange inversion,
    /// `[xⁿ] f̃ = (1/n)·[xⁿ⁻¹] (x/f)ⁿ`.
    pub fn reversion(&self) -> Result<Self> {
        let n = self.order();
        if n < 2 {
            return Err(Error::Precondition("reversion needs order at least two"));
        }
        if !self.coeffs[0].is_zero() {
            return Err(Error::Precondition("reversion needs a zero constant term"));
        }
        if !self.coeffs[1].is_unit() {
            return Err(Error::NotAUnit);
        }
        let psi = PowerSeries::new(self.coeffs[1..].to_vec()).inverse()?;
        let mut out = vec![R::zero(); n];
        let mut power = PowerSeries::one(n - 1);
        for m in 1..n {
            power = power.mul(&psi);
            out[m] = power.coeffs[m - 1].scaled(&Rational::new(1, m as i64));
        }
        Ok(PowerSeries { coeffs: out })
    }

    /// Index of the first differing coefficient on the common order.
    pub fn first_mismatch(&self, other: &Self) -> Option<usize> {
        self.coeffs.iter().zip(&other.coeffs).position(|(a, b)| a != b)
    }
}

/// Exact coefficientwise equality of two series of the same order.
pub fn gf_check<R: Ring>(lhs: &PowerSeries<R>, rhs: &PowerSeries<R>) -> bool {
    lhs == rhs
}

/// `Σ aₖ Bᵏ` for `ind(B) ≥ 1`. Row `j` only sees powers `k ≤ j/ind(B)`, so
/// the result is exact on `min(vr(B), ind(B)·N)` rows.
pub fn series_of_matrix<R: Ring>(g: &PowerSeries<R>, b: &TruncMatrix<R>) -> Result<TruncMatrix<R>> {
    let n = b.valid_rows();
    let order = g.order();
    if order == 0 {
        return Err(Error::TruncationExhausted);
    }
    let ind = match b.index_of() {
        MatrixIndex::Infinite => {
            return Ok(TruncMatrix::identity(n).scale(g.coeff(0)));
        }
        MatrixIndex::Finite(m) if m >= 1 => m as usize,
        MatrixIndex::Finite(_) => return Err(Error::Divergent),
    };
    let vr = n.min(ind.saturating_mul(order));
    let top = (order - 1).min((vr - 1) / ind);
    // Summing gₖ·Bᵏ keeps the accumulator out of the matrix products; when
    // B has constant entries the powers stay cheap.
    let mut rows: Vec<Vec<R>> = (0..vr).map(|j| vec![R::zero(); j + 1]).collect();
    let mut power = TruncMatrix::identity(n);
    for k in 0..=top {
        if k > 0 {
            power = power.mul(b)?;
        }
        let gk = g.coeff(k);
        if gk.is_zero() {
            continue;
        }
        for (j, row) in rows.iter_mut().enumerate() {
            for (col, e) in power.row(j).iter().enumerate() {
                if !e.is_zero() {
                    row[col].add_mul(gk, e);
                }
            }
        }
    }
    TruncMatrix::from_rows(0, rows)
}

/// The Toeplitz matrix `g(X̂)`, entry `(j, k) = g_{j-k}`.
pub fn toeplitz_of_series<R: Ring>(g: &PowerSeries<R>, n: usize) -> Result<TruncMatrix<R>> {
    let vr = n.min(g.order());
    if vr == 0 {
        return Err(Error::TruncationExhausted);
    }
    Ok(TruncMatrix::from_fn(0, vr, |j, k| g.coeff(j - k).clone()))
}

/// `Σ uₖ(t) xᵏ/k!` over the exact rows of `a`.
pub fn row_egf<R: Ring>(a: &TruncMatrix<R>, t: &R) -> PowerSeries<R> {
    PowerSeries::from_egf(&a.row_polys().iter().map(|u| u.eval(t)).collect::<Vec<_>>())
}

/// `Σ uₖ(t) xᵏ/f_c(k)` over the exact rows of `a`.
pub fn row_cegf<R: Ring>(a: &TruncMatrix<R>, t: &R, c: &CFactorial<R>) -> Result<PowerSeries<R>> {
    let vals: Vec<R> = a.row_polys().iter().map(|u| u.eval(t)).collect();
    PowerSeries::from_cegf(c, &vals)
}

impl<R: Ring> fmt::Display for PowerSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + O(x^{})", self.to_poly().display_in("x"), self.order())
    }
}

impl<R: Ring> fmt::Debug for PowerSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PowerSeries({self})")
    }
}

/// The sequence `c₁, c₂, …` with `f_c(n) = c₁⋯cₙ`.
#[derive(Clone, PartialEq)]
pub struct CFactorial<R> {
    c: Vec<R>,
    fact: Vec<R>,
    inv_fact: Vec<R>,
}

impl<R: Ring> CFactorial<R> {
    /// From `c₁, …, c_len`. Every `cₖ` must be a unit.
    pub fn new(c: Vec<R>) -> Result<Self> {
        let mut fact = vec![R::one()];
        let mut inv_fact = vec![R::one()];
        for ck in &c {
            let inv = ck.inverse().ok_or(Error::NotAUnit)?;
            fact.push(fact.last().expect("nonempty").times(ck));
            inv_fact.push(inv_fact.last().expect("nonempty").times(&inv));
        }
        Ok(CFactorial { c, fact, inv_fact })
    }

    pub fn from_fn(len: usize, f: impl Fn(usize) -> R) -> Result<Self> {
        CFactorial::new((1..=len).map(f).collect())
    }

    /// `cₖ = k`, the ordinary factorial.
    pub fn ordinary(len: usize) -> Self {
        CFactorial::from_fn(len, |k| R::from_i64(k as i64)).expect("positive integers are units")
    }

    /// `cₖ = k²`.
    pub fn squares(len: usize) -> Self {
        CFactorial::from_fn(len, |k| R::from_i64((k * k) as i64)).expect("positive integers are units")
    }

    /// `cₖ = [k] = 1 + q + … + q^{k-1}`.
    pub fn q_numbers(q: &R, len: usize) -> Result<Self> {
        CFactorial::from_fn(len, |k| q_number(q, k))
    }

    /// Number of stored `cₖ`.
    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    /// `cₖ` for `1 ≤ k ≤ len`.
    pub fn c(&self, k: usize) -> Result<&R> {
        if k == 0 || k > self.c.len() {
            return Err(Error::OutOfRange { index: k, limit: self.c.len() + 1 });
        }
        Ok(&self.c[k - 1])
    }

    pub fn values(&self) -> &[R] {
        &self.c
    }

    /// `f_c(k)`.
    pub fn factorial(&self, k: usize) -> Result<&R> {
        self.fact.get(k).ok_or(Error::OutOfRange { index: k, limit: self.fact.len() })
    }

    /// `1/f_c(k)`.
    pub fn inverse_factorial(&self, k: usize) -> Result<&R> {
        self.inv_fact.get(k).ok_or(Error::OutOfRange { index: k, limit: self.inv_fact.len() })
    }

    /// `f_c(n) / (f_c(k)·f_c(n-k))`.
    pub fn binomial(&self, n: usize, k: usize) -> Result<R> {
        if k > n {
            return Ok(R::zero());
        }
        Ok(self.factorial(n)?.times(self.inverse_factorial(k)?).times(self.inverse_factorial(n - k)?))
    }
}

impl<R: Ring> fmt::Debug for CFactorial<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.c).finish()
    }
}

/// `[k] = 1 + q + … + q^{k-1}`.
pub fn q_number<R: Ring>(q: &R, k: usize) -> R {
    let mut acc = R::zero();
    let mut power = R::one();
    for _ in 0..k {
        acc = acc.plus(&power);
        power = power.times(q);
    }
    acc
}

/// `e_c(x) = Σ xᵏ/f_c(k)` to order `n`.
pub fn c_exponential<R: Ring>(c: &CFactorial<R>, n: usize) -> Result<PowerSeries<R>> {
    PowerSeries::from_cegf(c, &vec![R::one(); n])
}
