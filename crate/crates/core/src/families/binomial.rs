use alloc::vec::Vec;

use crate::coeff::Ring;
use crate::error::{Error, Result};
use crate::matrix::{Basis, TruncMatrix};
use crate::series::{toeplitz_of_series, PowerSeries};

use super::of_d;

fn check_delta<R: Ring>(f: &PowerSeries<R>) -> Result<()> {
    if f.order() < 2 || !f.coeff(0).is_zero() || !f.coeff(1).is_one() {
        return Err(Error::Precondition("delta series needs f0 = 0 and f1 = 1"));
    }
    Ok(())
}

/// `C_f`, whose column `k` holds the coefficients of `fᵏ`.
pub fn composition_matrix<R: Ring>(f: &PowerSeries<R>, n: usize) -> Result<TruncMatrix<R>> {
    check_delta(f)?;
    let vr = n.min(f.order());
    let mut cols: Vec<PowerSeries<R>> = Vec::with_capacity(vr);
    let mut power = PowerSeries::one(f.order());
    for _ in 0..vr {
        cols.push(power.clone());
        power = power.mul(f);
    }
    Ok(TruncMatrix::from_fn(0, vr, |j, k| cols[k].coeff(j).clone()))
}

/// The binomial-type family of a delta series `f`.
#[derive(Clone, Debug)]
pub struct BinomialType<R: Ring> {
    /// `F·C_f·F⁻¹`.
    pub b: TruncMatrix<R>,
    /// `(1/f̃′)(D)·X`.
    pub m: TruncMatrix<R>,
    /// `f̃(D)`.
    pub p: TruncMatrix<R>,
    /// `(f̃/f̃′)(D)·X`, the closed form of `P·M`.
    pub pm: TruncMatrix<R>,
    /// The compositional inverse `f̃`.
    pub f_inv: PowerSeries<R>,
}

pub fn binomial_type<R: Ring>(f: &PowerSeries<R>, n: usize) -> Result<BinomialType<R>> {
    let c = composition_matrix(f, n)?;
    let vr = c.valid_rows();
    let b = TruncMatrix::product(&[
        &TruncMatrix::basis(Basis::F, vr),
        &c,
        &TruncMatrix::basis(Basis::Finv, vr),
    ])?;
    let f_inv = f.reversion()?;
    let fp = f_inv.derivative();
    let inv_fp = fp.inverse()?;
    let x = TruncMatrix::basis(Basis::X, n);
    let m = of_d(&inv_fp, n)?.mul(&x)?;
    let p = of_d(&f_inv, n)?;
    let ratio = f_inv.truncate(fp.order()).mul(&inv_fp);
    let pm = of_d(&ratio, n)?.mul(&x)?;
    Ok(BinomialType { b, m, p, pm, f_inv })
}

/// The Sheffer family `S = B·g(D)`.
#[derive(Clone, Debug)]
pub struct Sheffer<R: Ring> {
    pub s: TruncMatrix<R>,
    /// `(1/f̃′)(D)·((g′/g)(D) + X)`.
    pub m: TruncMatrix<R>,
    /// `f̃(D)`.
    pub p: TruncMatrix<R>,
    /// `(f̃/f̃′)(D)·((g′/g)(D) + X)`.
    pub pm: TruncMatrix<R>,
}

pub fn sheffer<R: Ring>(g: &PowerSeries<R>, f: &PowerSeries<R>, n: usize) -> Result<Sheffer<R>> {
    if g.order() == 0 || !g.coeff(0).is_unit() {
        return Err(Error::NotAUnit);
    }
    let bt = binomial_type(f, n)?;
    let s = bt.b.mul(&of_d(g, n)?)?;
    let log_d = g.derivative().div(&g.truncate(g.order() - 1))?;
    let inner = of_d(&log_d, n)?.add(&TruncMatrix::basis(Basis::X, n));
    let fp = bt.f_inv.derivative();
    let inv_fp = fp.inverse()?;
    let m = of_d(&inv_fp, n)?.mul(&inner)?;
    let ratio = bt.f_inv.truncate(fp.order()).mul(&inv_fp);
    let pm = of_d(&ratio, n)?.mul(&inner)?;
    Ok(Sheffer { s, m, p: bt.p, pm })
}

/// `C_f·g(X̂)`.
pub fn riordan_matrix<R: Ring>(g: &PowerSeries<R>, f: &PowerSeries<R>, n: usize) -> Result<TruncMatrix<R>> {
    if g.order() == 0 || !g.coeff(0).is_unit() {
        return Err(Error::NotAUnit);
    }
    composition_matrix(f, n)?.mul(&toeplitz_of_series(g, n)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Rational;
    use crate::monomial::monomiality_pair;
    use crate::poly::Poly;

    type M = TruncMatrix<Rational>;
    type S = PowerSeries<Rational>;

    fn em1(n: usize) -> S {
        S::exponential(n).sub(&S::one(n))
    }

    fn series(cs: &[i64]) -> S {
        PowerSeries::new(cs.iter().map(|&c| Rational::from(c)).collect())
    }

    #[test]
    fn composition_basics() {
        assert_eq!(composition_matrix(&S::x(6), 6).unwrap(), M::identity(6));
        let f = series(&[0, 1, 3, -2, 5, 1]);
        let c = composition_matrix(&f, 6).unwrap();
        assert_eq!(c.col_series(1).unwrap(), f);
        let c2 = composition_matrix(&em1(12), 12).unwrap();
        let c2inv = composition_matrix(&em1(12).reversion().unwrap(), 12).unwrap();
        assert_eq!(c2.mul(&c2inv).unwrap(), M::identity(12));
        // C_f applied to the coefficients of g gives g∘f.
        let g = series(&[1, -1, 2, 0, 3, 1]);
        let gf = g.compose(&f).unwrap();
        for j in 0..6 {
            let got = (0..=j).fold(Rational::from(0), |acc, k| acc + c.get(j, k) * g.coeff(k));
            assert_eq!(&got, gf.coeff(j));
        }
        assert!(composition_matrix(&series(&[0, 2, 1]), 3).is_err());
    }

    #[test]
    fn identity_delta() {
        let bt = binomial_type(&S::x(8), 8).unwrap();
        assert_eq!(bt.b, M::identity(8));
        assert!(bt.m.agrees_with(&M::basis(Basis::X, 8)));
        assert!(bt.p.agrees_with(&M::basis(Basis::D, 8)));
    }

    #[test]
    fn touchard_pattern() {
        let n = 10;
        let bt = binomial_type(&em1(n + 1), n).unwrap();
        let u2 = bt.b.row_poly(2).unwrap();
        assert_eq!(u2, Poly::new(alloc::vec![Rational::from(0), Rational::from(1), Rational::from(1)]));
        let log1p = S::one(n + 1).add(&S::x(n + 1)).log().unwrap();
        assert_eq!(bt.f_inv, log1p);
        let pair = monomiality_pair(&bt.b).unwrap();
        assert!(bt.m.agrees_with(&pair.m));
        assert!(bt.p.agrees_with(&pair.p));
        assert!(bt.pm.agrees_with(&pair.p.mul(&pair.m).unwrap()));
    }

    #[test]
    fn binomial_convolution() {
        let f = PowerSeries::from_egf(&[0, 1, 2, -1, 3, 1, 0, 2, 1, 1, 5, 2].map(Rational::from));
        let bt = binomial_type(&f, 11).unwrap();
        let (t, x) = (Rational::from(1), Rational::from(2));
        let us = bt.b.row_polys();
        for n in 0..=10 {
            let lhs = us[n].eval(&(&t + &x));
            let rhs = (0..=n).fold(Rational::from(0), |acc, k| {
                acc + crate::coeff::binomial(n, k) * us[k].eval(&t) * us[n - k].eval(&x)
            });
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn sheffer_closed_forms() {
        let n = 10;
        let g = PowerSeries::from_egf(&[2, 1, -1, 3, 0, 1, 1, 1, -2, 1, 1].map(Rational::from));
        let f = PowerSeries::from_egf(&[0, 1, -1, 2, 1, 0, 3, 1, 1, 2, 1].map(Rational::from));
        let sh = sheffer(&g, &f, n).unwrap();
        let pair = monomiality_pair(&sh.s).unwrap();
        assert!(sh.m.agrees_with(&pair.m));
        assert!(sh.p.agrees_with(&pair.p));
        assert!(sh.pm.agrees_with(&pair.p.mul(&pair.m).unwrap()));
        // g = 1 reduces to the binomial type.
        let bt = binomial_type(&f, n).unwrap();
        let sh1 = sheffer(&S::one(n + 1), &f, n).unwrap();
        assert_eq!(sh1.s, bt.b);
        assert!(sh1.m.agrees_with(&bt.m));
        // f = z reduces to Appell.
        let sh2 = sheffer(&g, &S::x(n + 1), n).unwrap();
        assert!(sh2.m.agrees_with(&super::super::appell_m(&g, n).unwrap()));
    }

    #[test]
    fn riordan_and_sheffer_are_conjugate() {
        let n = 10;
        let ge = [1, 2, -1, 3, 1, 0, 2, 1, 1, 4].map(Rational::from);
        let f = series(&[0, 1, 2, -1, 1, 3, 0, 1, 2, 1]);
        let sh = sheffer(&PowerSeries::new(ge.to_vec()), &f, n).unwrap();
        let r = riordan_matrix(&PowerSeries::new(ge.to_vec()), &f, n).unwrap();
        let conj = TruncMatrix::product(&[&M::basis(Basis::F, n), &r, &M::basis(Basis::Finv, n)]).unwrap();
        assert!(conj.agrees_with(&sh.s));
        assert_eq!(riordan_matrix(&S::one(5), &S::x(5), 5).unwrap(), M::identity(5));
        // In this order of factors column 0 holds g∘f, not g.
        let g = PowerSeries::new(ge.to_vec());
        assert_eq!(r.col_series(0).unwrap(), g.compose(&f).unwrap());
    }
}
