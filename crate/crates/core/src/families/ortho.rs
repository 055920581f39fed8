use alloc::vec;
use alloc::vec::Vec;

use crate::coeff::{Rational, Ring};
use crate::error::{Error, Result};
use crate::matrix::{matrix_poly_eval, Basis, TruncMatrix};
use crate::monomial::{monomiality_pair, MonomialityPair};
use crate::poly::Poly;
use crate::series::{series_of_matrix, PowerSeries};

/// `f(t) = f₀ + f₁t + f₂t²` and `g(t) = g₀ + g₁t`.
#[derive(Clone, Debug, PartialEq)]
pub struct OrthoSpec<R> {
    pub f0: R,
    pub f1: R,
    pub f2: R,
    pub g0: R,
    pub g1: R,
}

#[derive(Clone, Debug)]
pub struct OrthoSolution<R: Ring> {
    /// `D·g(X) + (D²/2)·f(X)`.
    pub b: TruncMatrix<R>,
    /// `g₁DX + f₂(D²/2)X²`, the main diagonal of `B`.
    pub h: TruncMatrix<R>,
    /// The monic solution of `AB = HA`.
    pub a: TruncMatrix<R>,
    pub pair: MonomialityPair<R>,
}

impl<R: Ring> OrthoSpec<R> {
    pub fn new(f0: R, f1: R, f2: R, g0: R, g1: R) -> Self {
        OrthoSpec { f0, f1, f2, g0, g1 }
    }

    /// `B` on `n` exact rows.
    pub fn b_matrix(&self, n: usize) -> Result<TruncMatrix<R>> {
        let big = n + 2;
        let x = TruncMatrix::basis(Basis::X, big);
        let d = TruncMatrix::basis(Basis::D, big);
        let half = Rational::new(1, 2);
        let g = Poly::new(vec![self.g0.clone(), self.g1.clone()]);
        let f = Poly::new(vec![self.f0.clone(), self.f1.clone(), self.f2.clone()]);
        let dg = d.mul(&matrix_poly_eval(&g, &x)?)?;
        let d2f = d.mul(&d)?.mul(&matrix_poly_eval(&f, &x)?)?;
        let b = dg.add(&d2f.map(|e| e.scaled(&half)));
        b.with_index_bound(0)?.truncate_rows(n)
    }

    /// `H_{k,k} = g₁k + f₂k(k−1)/2`.
    pub fn h_entry(&self, k: usize) -> R {
        let k = k as i64;
        self.g1
            .scaled(&Rational::from(k))
            .plus(&self.f2.scaled(&Rational::new(k * (k - 1), 2)))
    }

    /// The closed form of `L` for `f₂ = 0`:
    /// `X − (g₀/g₁)I − (f₁/g₁)DX + ((f₁g₀ − f₀g₁)/(2g₁²))D + (f₁²/(4g₁²))D²X`.
    pub fn l_closed(&self, n: usize) -> Result<TruncMatrix<R>> {
        let inv = self.g1.inverse().ok_or(Error::NotAUnit)?;
        let inv2 = inv.times(&inv);
        let big = n + 1;
        let x = TruncMatrix::basis(Basis::X, big);
        let d = TruncMatrix::basis(Basis::D, big);
        let id = TruncMatrix::identity(big);
        let dx = d.mul(&x)?;
        let d2x = d.mul(&dx)?;
        let c_d = self.f1.times(&self.g0).minus(&self.f0.times(&self.g1)).times(&inv2).scaled(&Rational::new(1, 2));
        let c_d2x = self.f1.times(&self.f1).times(&inv2).scaled(&Rational::new(1, 4));
        let l = x
            .sub(&id.scale(&self.g0.times(&inv)))
            .sub(&dx.scale(&self.f1.times(&inv)))
            .add(&d.scale(&c_d))
            .add(&d2x.scale(&c_d2x));
        l.truncate_rows(n.min(l.valid_rows()))
    }

    /// The closed form of `M` for `f₂ = 0`: `w₀(X) + D·w₁(X) + ½D²·w₂(X)`.
    pub fn m_closed(&self, n: usize) -> Result<TruncMatrix<R>> {
        let inv = self.g1.inverse().ok_or(Error::NotAUnit)?;
        let inv2 = inv.times(&inv);
        let half = Rational::new(1, 2);
        let w0 = Poly::new(vec![self.g0.times(&inv), R::one()]);
        let w1 = Poly::new(vec![
            self.f0.times(&self.g1).plus(&self.f1.times(&self.g0)).times(&inv2).scaled(&half),
            self.f1.times(&inv),
        ]);
        let w2 = Poly::new(vec![
            self.f0.times(&self.f1).times(&inv2).scaled(&half),
            self.f1.times(&self.f1).times(&inv2).scaled(&half),
        ]);
        let big = n + 1;
        let x = TruncMatrix::basis(Basis::X, big);
        let d = TruncMatrix::basis(Basis::D, big);
        let m = matrix_poly_eval(&w0, &x)?
            .add(&d.mul(&matrix_poly_eval(&w1, &x)?)?)
            .add(&d.mul(&d)?.mul(&matrix_poly_eval(&w2, &x)?)?.map(|e| e.scaled(&half)));
        m.truncate_rows(n.min(m.valid_rows()))
    }

    /// `Σₖ (−f₁/(2g₁))ᵏ·D^{k+1}`.
    pub fn p_closed_sum(&self, n: usize) -> Result<TruncMatrix<R>> {
        let r = self.translation()?;
        let mut coeffs = vec![R::zero(); n];
        let mut power = R::one();
        for c in coeffs.iter_mut().skip(1) {
            *c = power.clone();
            power = power.times(&r);
        }
        series_of_matrix(&PowerSeries::new(coeffs), &TruncMatrix::basis(Basis::D, n))
    }

    /// `D·exp(−f₁/(2g₁)·D)`.
    pub fn p_closed_exp(&self, n: usize) -> Result<TruncMatrix<R>> {
        let r = self.translation()?;
        let e = PowerSeries::x(n).scale(&r).exp()?;
        let d = TruncMatrix::basis(Basis::D, n);
        d.mul(&series_of_matrix(&e, &d)?)
    }

    fn translation(&self) -> Result<R> {
        let inv = self.g1.inverse().ok_or(Error::NotAUnit)?;
        Ok(self.f1.times(&inv).scaled(&Rational::new(-1, 2)))
    }
}

/// Solves `AB = HA` for monic `A`, row by row:
/// `a_{n,k}·(H_{n,n} − H_{k,k}) = a_{n,k+1}B_{k+1,k} + a_{n,k+2}B_{k+2,k}`.
pub fn ortho_solve<R: Ring>(spec: &OrthoSpec<R>, n: usize) -> Result<OrthoSolution<R>> {
    if !spec.g1.is_unit() {
        return Err(Error::NotAUnit);
    }
    let h_diag: Vec<R> = (0..n).map(|k| spec.h_entry(k)).collect();
    let b = spec.b_matrix(n)?;
    let mut rows: Vec<Vec<R>> = Vec::with_capacity(n);
    for row in 0..n {
        let mut a = vec![R::zero(); row + 1];
        a[row] = R::one();
        for k in (0..row).rev() {
            let gap = h_diag[row].minus(&h_diag[k]);
            if gap.is_zero() {
                return Err(Error::DegenerateSpectrum { first: k, second: row });
            }
            let inv = gap.inverse().ok_or(Error::NotAUnit)?;
            let mut acc = a[k + 1].times(&b.get(k + 1, k));
            if k + 2 <= row {
                acc = acc.plus(&a[k + 2].times(&b.get(k + 2, k)));
            }
            a[k] = acc.times(&inv);
        }
        rows.push(a);
    }
    let a = TruncMatrix::from_rows(0, rows)?;
    let pair = monomiality_pair(&a)?;
    Ok(OrthoSolution { b, h: TruncMatrix::from_diagonal(0, &h_diag), a, pair })
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = TruncMatrix<Rational>;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn spec(f0: Rational, f1: Rational, f2: Rational, g0: Rational, g1: Rational) -> OrthoSpec<Rational> {
        OrthoSpec::new(f0, f1, f2, g0, g1)
    }

    #[test]
    fn solves_intertwining_equation() {
        let s = spec(q(3, 2), q(-1, 3), q(0, 1), q(2, 5), q(7, 4));
        let sol = ortho_solve(&s, 16).unwrap();
        let ab = sol.a.mul(&sol.b).unwrap();
        let ha = sol.h.mul(&sol.a).unwrap();
        assert_eq!(ab, ha);
        assert!(sol.pair.l.is_banded(-1, 1));
        assert!(sol.pair.l.agrees_with(&s.l_closed(16).unwrap()));
        assert!(sol.pair.m.agrees_with(&s.m_closed(16).unwrap()));
        assert!(sol.pair.p.agrees_with(&s.p_closed_sum(16).unwrap()));
    }

    #[test]
    fn exponential_p_differs_from_sum() {
        let s = spec(q(1, 1), q(2, 1), q(0, 1), q(0, 1), q(1, 1));
        let sol = ortho_solve(&s, 10).unwrap();
        assert!(sol.pair.p.agrees_with(&s.p_closed_sum(10).unwrap()));
        assert!(!sol.pair.p.agrees_with(&s.p_closed_exp(10).unwrap()));
    }

    #[test]
    fn hermite_type_l() {
        let s = spec(q(3, 1), q(0, 1), q(0, 1), q(0, 1), q(1, 1));
        let sol = ortho_solve(&s, 12).unwrap();
        let expect = M::basis(Basis::X, 12).sub(&M::basis(Basis::D, 12).scale(&q(3, 2)));
        assert!(sol.pair.l.agrees_with(&expect));
    }

    #[test]
    fn tridiagonal_with_quadratic_f() {
        let s = spec(q(1, 1), q(2, 3), q(1, 5), q(-1, 2), q(3, 1));
        let sol = ortho_solve(&s, 14).unwrap();
        assert_eq!(sol.a.mul(&sol.b).unwrap(), sol.h.mul(&sol.a).unwrap());
        assert!(sol.pair.l.is_banded(-1, 1));
    }

    #[test]
    fn degenerate_spectrum() {
        // g₁ + f₂(n+k−1)/2 = 0 at n + k = 3 for g₁ = 1, f₂ = −1.
        let s = spec(q(1, 1), q(0, 1), q(-1, 1), q(0, 1), q(1, 1));
        assert_eq!(ortho_solve(&s, 6).unwrap_err(), Error::DegenerateSpectrum { first: 1, second: 2 });
    }
}
