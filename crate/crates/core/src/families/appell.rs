use crate::coeff::{Rational, Ring};
use crate::error::{Error, Result};
use crate::matrix::{matrix_poly_eval, Basis, TruncMatrix};
use crate::poly::Poly;
use crate::series::PowerSeries;

use super::of_d;

/// `A = f(D)`; row `k` is `Σⱼ C(k,j) f_{k−j} tʲ` in exponential coefficients.
pub fn appell_matrix<R: Ring>(f: &PowerSeries<R>, n: usize) -> Result<TruncMatrix<R>> {
    if f.order() == 0 || !f.coeff(0).is_unit() {
        return Err(Error::NotAUnit);
    }
    of_d(f, n)
}

/// The logarithmic derivative `h = f′/f`, one order shorter than `f`.
pub fn appell_h<R: Ring>(f: &PowerSeries<R>) -> Result<PowerSeries<R>> {
    f.derivative().div(&f.truncate(f.order().saturating_sub(1)))
}

/// `M = X + h(D)`.
pub fn appell_m<R: Ring>(f: &PowerSeries<R>, n: usize) -> Result<TruncMatrix<R>> {
    let hd = of_d(&appell_h(f)?, n)?;
    Ok(TruncMatrix::basis(Basis::X, n).add(&hd))
}

/// `L = f(D)·X·(1/f)(D) = X − h(D)`.
pub fn appell_l<R: Ring>(f: &PowerSeries<R>, n: usize) -> Result<TruncMatrix<R>> {
    let hd = of_d(&appell_h(f)?, n)?;
    Ok(TruncMatrix::basis(Basis::X, n).sub(&hd))
}

/// `A = exp(h̃(D))` and `M = X + h̃′(D)` for a polynomial `h̃` with
/// `h̃(0) = 0`.
pub fn appell_from_h<R: Ring>(htilde: &Poly<R>, n: usize) -> Result<(TruncMatrix<R>, TruncMatrix<R>)> {
    if !htilde.coeff(0).is_zero() {
        return Err(Error::Precondition("h~ needs a zero constant term"));
    }
    let f = PowerSeries::from_poly(htilde, n).exp()?;
    let a = of_d(&f, n)?;
    let d = TruncMatrix::basis(Basis::D, n);
    let m = TruncMatrix::basis(Basis::X, n).add(&matrix_poly_eval(&htilde.derivative(), &d)?);
    Ok((a, m))
}

/// The orthogonal Appell family with `h(t) = h₀ + h₁t`.
#[derive(Clone, Debug)]
pub struct AppellOrthogonal<R: Ring> {
    pub a: TruncMatrix<R>,
    /// `X − h₀I − h₁D`.
    pub l: TruncMatrix<R>,
    pub h0: R,
    pub h1: R,
}

/// `f(t) = f₀·exp((f₁/f₀)t + ((f₀f₂ − f₁²)/(2f₀²))t²)`, where `f₀, f₁, f₂` are
/// the leading exponential coefficients of `f`.
pub fn appell_orthogonal<R: Ring>(f0: &R, f1: &R, f2: &R, n: usize) -> Result<AppellOrthogonal<R>> {
    let inv0 = f0.inverse().ok_or(Error::NotAUnit)?;
    let h0 = f1.times(&inv0);
    let h1 = f0.times(f2).minus(&f1.times(f1)).times(&inv0).times(&inv0);
    let half = Rational::new(1, 2);
    let f = PowerSeries::exp_poly(&[h0.clone(), h1.scaled(&half)], n).scale(f0);
    let a = of_d(&f, n)?;
    let id = TruncMatrix::identity(n);
    let l = TruncMatrix::basis(Basis::X, n)
        .sub(&id.scale(&h0))
        .sub(&TruncMatrix::basis(Basis::D, n).scale(&h1));
    Ok(AppellOrthogonal { a, l, h0, h1 })
}
