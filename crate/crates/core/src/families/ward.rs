use alloc::vec::Vec;

use crate::coeff::{factorial, Rational, Ring};
use crate::error::{Error, Result};
use crate::matrix::{Basis, TruncMatrix};
use crate::monomial::{monomiality_pair, MonomialityPair};
use crate::poly::Poly;
use crate::series::{q_number, series_of_matrix, CFactorial, PowerSeries};

use super::of_d;

/// `cₖ = a₁k + a₂k² + …` for `k = 1..=len`, with `coeffs = [a₁, a₂, …]`.
pub fn c_polynomial<R: Ring>(coeffs: &[R], len: usize) -> Result<CFactorial<R>> {
    CFactorial::from_fn(len, |k| {
        let mut acc = R::zero();
        let mut power = R::one();
        for a in coeffs {
            power = power.times(&R::from_i64(k as i64));
            acc = acc.plus(&a.times(&power));
        }
        acc
    })
}

/// `(D_c, X_c)` with `(D_c)_{k+1,k} = c_{k+1}` and `(X_c)_{k,k+1} = (k+1)/c_{k+1}`.
/// Needs `c₁, …, c_n`.
pub fn ward_basis<R: Ring>(c: &CFactorial<R>, n: usize) -> Result<(TruncMatrix<R>, TruncMatrix<R>)> {
    if n == 0 {
        return Err(Error::TruncationExhausted);
    }
    if c.len() < n {
        return Err(Error::OutOfRange { index: n, limit: c.len() + 1 });
    }
    let vals = c.values();
    let d_c = TruncMatrix::from_diagonal(1, &vals[..n - 1]);
    let x_entries: Vec<R> = (0..n)
        .map(|k| {
            let inv = vals[k].inverse().expect("c-factorial entries are units");
            inv.scaled(&Rational::from(k as i64 + 1))
        })
        .collect();
    Ok((d_c, TruncMatrix::from_diagonal(-1, &x_entries)))
}

/// The generalized Appell family `A = g(D_c)`.
#[derive(Clone, Debug)]
pub struct WardFamily<R: Ring> {
    pub d_c: TruncMatrix<R>,
    pub x_c: TruncMatrix<R>,
    pub a: TruncMatrix<R>,
    /// Ordinary logarithmic derivative `g′/g`.
    pub h: PowerSeries<R>,
    /// `X_c + h(D_c)`.
    pub m: TruncMatrix<R>,
    /// `D_c`.
    pub p: TruncMatrix<R>,
    /// `X_c − h(D_c)`.
    pub l: TruncMatrix<R>,
}

impl<R: Ring> WardFamily<R> {
    /// Direct conjugates with respect to `X_c` and `D_c`.
    pub fn pair(&self) -> Result<MonomialityPair<R>> {
        crate::monomial::monomiality_pair_with(&self.a, &self.x_c, &self.d_c)
    }
}

/// `g` is the ordinary form of `Σ gₖ tᵏ/f_c(k)`.
pub fn ward_family<R: Ring>(c: &CFactorial<R>, g: &PowerSeries<R>, n: usize) -> Result<WardFamily<R>> {
    if g.order() == 0 || !g.coeff(0).is_unit() {
        return Err(Error::NotAUnit);
    }
    let (d_c, x_c) = ward_basis(c, n)?;
    let a = series_of_matrix(g, &d_c)?;
    let h = g.derivative().div(&g.truncate(g.order() - 1))?;
    let hd = series_of_matrix(&h, &d_c)?;
    Ok(WardFamily { m: x_c.add(&hd), l: x_c.sub(&hd), p: d_c.clone(), d_c, x_c, a, h })
}

/// `L = X_c − g₁/(g₀c₁)·I − (2c₁g₀g₂ − c₂g₁²)/(c₁²c₂g₀²)·D_c` from the
/// c-exponential coefficients `g₀, g₁, g₂` of a `g` with degree-one
/// logarithmic derivative.
pub fn ward_l_degree_one<R: Ring>(c: &CFactorial<R>, g: [&R; 3], n: usize) -> Result<TruncMatrix<R>> {
    let [g0, g1, g2] = g;
    let (d_c, x_c) = ward_basis(c, n)?;
    let (c1, c2) = (c.c(1)?, c.c(2)?);
    let inv_g0 = g0.inverse().ok_or(Error::NotAUnit)?;
    let inv_c1 = c1.inverse().ok_or(Error::NotAUnit)?;
    let inv_c2 = c2.inverse().ok_or(Error::NotAUnit)?;
    let h0 = g1.times(&inv_g0).times(&inv_c1);
    let num = c1.times(g0).times(g2).scaled(&Rational::from(2)).minus(&c2.times(g1).times(g1));
    let h1 = num.times(&inv_c1).times(&inv_c1).times(&inv_c2).times(&inv_g0).times(&inv_g0);
    Ok(x_c.sub(&TruncMatrix::identity(n).scale(&h0)).sub(&d_c.scale(&h1)))
}

/// The Hermite-type rows `vₖ` of `f(D)` and the rows `uₖ` recovered from them.
#[derive(Clone, Debug)]
pub struct WardToHermite<R: Ring> {
    /// `f(D)` with `fₖ = (k!/f_c(k))·gₖ`.
    pub v: TruncMatrix<R>,
    /// `uₖ(t) = Σⱼ (f_c(k)·j!/(f_c(j)·k!))·a_{k,j}·tʲ`.
    pub u: Vec<Poly<R>>,
}

/// Needs `g′/g` of degree at most one.
pub fn ward_to_hermite<R: Ring>(c: &CFactorial<R>, g: &PowerSeries<R>, n: usize) -> Result<WardToHermite<R>> {
    if g.order() == 0 || !g.coeff(0).is_unit() {
        return Err(Error::NotAUnit);
    }
    let h = g.derivative().div(&g.truncate(g.order() - 1))?;
    if h.coeffs().iter().skip(2).any(|e| !e.is_zero()) {
        return Err(Error::Precondition("logarithmic derivative must have degree at most one"));
    }
    // fₖ/k! = gₖ/f_c(k): f and g share their ordinary coefficients.
    let v = of_d(g, n)?;
    let u = (0..v.valid_rows())
        .map(|k| {
            let row = v.row(k);
            let coeffs = row
                .iter()
                .enumerate()
                .map(|(j, a)| {
                    let w = c.factorial(k)?.times(c.inverse_factorial(j)?);
                    let fac = factorial(j) * factorial(k).recip().expect("nonzero");
                    Ok(a.times(&w).scaled(&fac))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(Poly::new(coeffs))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(WardToHermite { v, u })
}

/// Example family `A = exp(−D_c)` with `D_c = a(D + yU)`, `U_{k+1,k} = (k+1)²`.
#[derive(Clone, Debug)]
pub struct LaguerreGeneral<R: Ring> {
    pub d_c: TruncMatrix<R>,
    pub a: TruncMatrix<R>,
    pub pair: MonomialityPair<R>,
    /// `X + a(1+y)I + D(a²y(1+y)I + 2ayX) + a²y²D²X`.
    pub l_closed: TruncMatrix<R>,
    /// `l_closed` with `a ↦ −a`.
    pub m_closed: TruncMatrix<R>,
    /// `Σₖ (ay)ᵏ D^{k+1}`.
    pub p_closed: TruncMatrix<R>,
}

pub fn laguerre_general<R: Ring>(a: &R, y: &R, n: usize) -> Result<LaguerreGeneral<R>> {
    if a.is_zero() {
        return Err(Error::Precondition("a must be nonzero"));
    }
    let squares: Vec<R> = (1..n).map(|k| R::from_i64((k * k) as i64)).collect();
    let u = TruncMatrix::from_diagonal(1, &squares);
    let d = TruncMatrix::basis(Basis::D, n);
    let d_c = d.add(&u.scale(y)).scale(a);
    let neg_exp = PowerSeries::x(n).scale(&R::from_i64(-1)).exp()?;
    let mat = series_of_matrix(&neg_exp, &d_c)?;
    let pair = monomiality_pair(&mat)?;
    let l_closed = laguerre_closed(a, y, n)?;
    let m_closed = laguerre_closed(&a.negated(), y, n)?;
    let ay = a.times(y);
    let mut p_coeffs = alloc::vec![R::zero(); n];
    let mut power = R::one();
    for c in p_coeffs.iter_mut().skip(1) {
        *c = power.clone();
        power = power.times(&ay);
    }
    let p_closed = series_of_matrix(&PowerSeries::new(p_coeffs), &d)?;
    Ok(LaguerreGeneral { d_c, a: mat, pair, l_closed, m_closed, p_closed })
}

fn laguerre_closed<R: Ring>(a: &R, y: &R, n: usize) -> Result<TruncMatrix<R>> {
    let big = n + 1;
    let x = TruncMatrix::basis(Basis::X, big);
    let d = TruncMatrix::basis(Basis::D, big);
    let id = TruncMatrix::<R>::identity(big);
    let one_y = R::one().plus(y);
    let a2y = a.times(a).times(y);
    let inner = id.scale(&a2y.times(&one_y)).add(&x.scale(&a.times(y).scaled(&Rational::from(2))));
    let l = x
        .add(&id.scale(&a.times(&one_y)))
        .add(&d.mul(&inner)?)
        .add(&d.mul(&d)?.mul(&x)?.scale(&a2y.times(y)));
    l.truncate_rows(n.min(l.valid_rows()))
}

/// `𝒟_q p(t) = (p(qt) − p(t))/((q−1)t)`, computed as `tᵏ ↦ [k]t^{k−1}`.
pub fn jackson_derivative<R: Ring>(p: &Poly<R>, q: &R) -> Result<Poly<R>> {
    if q.is_one() {
        return Err(Error::Precondition("q must differ from 1"));
    }
    Ok(Poly::new(
        p.coeffs()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.times(&q_number(q, k)))
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::ParamPoly;
    use crate::series::row_cegf;
    use alloc::string::ToString;

    type M = TruncMatrix<Rational>;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn pp(s: &str) -> ParamPoly {
        ParamPoly::variable(s)
    }

    #[test]
    fn ordinary_c_gives_x_and_d() {
        let (d_c, x_c) = ward_basis(&CFactorial::<Rational>::ordinary(8), 8).unwrap();
        assert_eq!(d_c, M::basis(Basis::D, 8));
        assert_eq!(x_c, M::basis(Basis::X, 8));
    }

    #[test]
    fn squares_basis() {
        let n = 10;
        let (d_c, x_c) = ward_basis(&CFactorial::<Rational>::squares(n), n).unwrap();
        assert_eq!(d_c.get(3, 2), Rational::from(9));
        assert_eq!(x_c.get(2, 3), q(1, 3));
        let comm = x_c.mul(&d_c).unwrap().sub(&d_c.mul(&x_c).unwrap());
        assert!(comm.agrees_with(&M::identity(n)));
        let d = M::basis(Basis::D, n);
        assert!(x_c.mul(&d).unwrap().agrees_with(&M::identity(n)));
        let dxd = TruncMatrix::product(&[&d, &M::basis(Basis::X, n), &d]).unwrap();
        assert!(dxd.agrees_with(&d_c));
    }

    #[test]
    fn q_basis() {
        let c = CFactorial::q_numbers(&Rational::from(2), 6).unwrap();
        let (d_c, _) = ward_basis(&c, 6).unwrap();
        assert_eq!(d_c.diagonal(1), [1, 3, 7, 15, 31].map(Rational::from));
    }

    #[test]
    fn squares_with_quadratic_exponent() {
        let (z, y) = (pp("z"), pp("y"));
        let n = 8;
        let c = CFactorial::<ParamPoly>::squares(n);
        let g = PowerSeries::exp_poly(&[z.clone(), y.clone()], n);
        let fam = ward_family(&c, &g, n).unwrap();
        assert_eq!(fam.a.row_poly(1).unwrap().to_string(), "t + z");
        assert_eq!(fam.a.row_poly(2).unwrap().to_string(), "t^2 + 4*z*t + 2*z^2 + 4*y");
        assert_eq!(fam.a.row_poly(3).unwrap().to_string(), "t^3 + 9*z*t^2 + 18*z^2*t + 36*y*t + 6*z^3 + 36*z*y");
        let pair = fam.pair().unwrap();
        assert!(fam.m.agrees_with(&pair.m));
        assert!(fam.l.agrees_with(&pair.l));
        assert!(pair.p.agrees_with(&fam.d_c));
        // M = X_c + zI + 2y·D_c.
        let expect = fam
            .x_c
            .add(&TruncMatrix::identity(n).scale(&z))
            .add(&fam.d_c.scale(&y.scaled(&Rational::from(2))));
        assert!(fam.m.agrees_with(&expect));
        let g0 = ParamPoly::one();
        let g2 = z.times(&z).scaled(&Rational::from(2)).plus(&y.scaled(&Rational::from(4)));
        let cl = ward_l_degree_one(&c, [&g0, &z, &g2], n).unwrap();
        assert!(cl.agrees_with(&fam.l));
        assert!(cl.is_banded(-1, 1));
    }

    #[test]
    fn squares_integral_recurrence() {
        let (z, y) = (pp("z"), pp("y"));
        let n = 14;
        let c = CFactorial::<ParamPoly>::squares(n);
        let g = PowerSeries::exp_poly(&[z.clone(), y.clone()], n);
        let fam = ward_family(&c, &g, n).unwrap();
        let us = fam.a.row_polys();
        let coef = y.scaled(&Rational::from(-2));
        for k in 1..=12 {
            let integral = fam.x_c.apply_to_poly(&us[k]);
            let jc = integral.unwrap_or_else(|_| {
                // Row action of X_c on uₖ, i.e. term-wise integration.
                let cs = us[k].coeffs();
                let mut out = alloc::vec![ParamPoly::zero()];
                for (j, a) in cs.iter().enumerate() {
                    out.push(a.scaled(&Rational::new(1, j as i64 + 1)));
                }
                Poly::new(out)
            });
            let lhs = &(&us[k - 1].scale(&coef.scaled(&Rational::from((k * k) as i64))) - &us[k].scale(&z))
                + &us[k + 1].scale_rational(&Rational::new(1, k as i64 + 1));
            assert_eq!(lhs, jc, "k = {k}");
        }
    }

    #[test]
    fn generating_function() {
        let n = 10;
        let c = CFactorial::q_numbers(&q(1, 3), n).unwrap();
        let g = PowerSeries::new([1, 2, -1, 3, 1, 0, 1, 1, 2, 1].map(Rational::from).to_vec());
        let fam = ward_family(&c, &g, n).unwrap();
        let t = q(-2, 3);
        let ec = crate::series::c_exponential(&c, n).unwrap();
        let ec_tz = PowerSeries::new(ec.coeffs().iter().enumerate().map(|(k, e)| e * &t.pow(k as u32)).collect());
        assert_eq!(g.mul(&ec_tz), row_cegf(&fam.a, &t, &c).unwrap());
    }

    #[test]
    fn trivial_g() {
        let c = CFactorial::<Rational>::squares(6);
        let fam = ward_family(&c, &PowerSeries::one(6), 6).unwrap();
        assert_eq!(fam.a, M::identity(6));
        assert!(fam.m.agrees_with(&fam.x_c));
    }

    #[test]
    fn hermite_link() {
        let n = 8;
        let c = CFactorial::<Rational>::squares(n);
        let g = PowerSeries::exp_poly(&[q(1, 2), q(-1, 3)], n);
        let fam = ward_family(&c, &g, n).unwrap();
        let wh = ward_to_hermite(&c, &g, n).unwrap();
        assert_eq!(wh.u, fam.a.row_polys());
        let ord = CFactorial::<Rational>::ordinary(n);
        let same = ward_to_hermite(&ord, &g, n).unwrap();
        assert_eq!(same.u, same.v.row_polys());
        let cubic = PowerSeries::exp_poly(&[q(0, 1), q(0, 1), q(1, 1)], n);
        assert!(ward_to_hermite(&c, &cubic, n).is_err());
    }

    #[test]
    fn example_three() {
        let n = 10;
        let qv = Rational::from(2);
        let c = CFactorial::q_numbers(&qv, n).unwrap();
        let (f1, f2) = (q(1, 3), q(-2, 5));
        let two = q_number(&qv, 2);
        let h1 = (Rational::from(2) * &f2 - &two * &f1 * &f1) / &two;
        let g = PowerSeries::exp_poly(&[f1.clone(), &h1 / &Rational::from(2)], n);
        let fam = ward_family(&c, &g, n).unwrap();
        let expect = fam.x_c.add(&M::identity(n).scale(&f1)).add(&fam.d_c.scale(&h1));
        assert!(fam.m.agrees_with(&expect));
        assert!(fam.pair().unwrap().m.agrees_with(&expect));
        let cegf = g.cegf_coeffs(&c).unwrap();
        assert_eq!(cegf[1], f1);
        assert_eq!(cegf[2], f2);
    }

    #[test]
    fn laguerre_closed_forms() {
        let (a, y) = (pp("a"), pp("y"));
        let lg = laguerre_general(&a, &y, 10).unwrap();
        assert!(lg.pair.l.agrees_with(&lg.l_closed));
        assert!(lg.pair.m.agrees_with(&lg.m_closed));
        assert!(lg.pair.p.agrees_with(&lg.p_closed));
        assert!(laguerre_general(&ParamPoly::zero(), &y, 4).is_err());
    }

    #[test]
    fn laguerre_specialization() {
        for a in [2, 3, 5] {
            let n = 12;
            let av = Rational::from(a);
            let lg = laguerre_general(&av, &av.recip().unwrap(), n).unwrap();
            let x = M::basis(Basis::X, n + 1);
            let d = M::basis(Basis::D, n + 1);
            let id = M::identity(n + 1);
            let one_a = Rational::from(1 + a);
            let expect = id
                .scale(&one_a)
                .add(&d.mul(&id.scale(&one_a).add(&x.scale(&Rational::from(2)))).unwrap())
                .add(&TruncMatrix::product(&[&d, &d, &x]).unwrap())
                .add(&x);
            assert!(lg.pair.l.agrees_with(&expect), "a = {a}");
        }
    }

    #[test]
    fn y_zero_is_appell() {
        let lg = laguerre_general(&Rational::from(3), &Rational::from(0), 8).unwrap();
        let expect = M::basis(Basis::X, 8).add(&M::identity(8).scale(&Rational::from(3)));
        assert!(lg.pair.l.agrees_with(&expect));
    }

    #[test]
    fn jackson() {
        let qv = Rational::from(2);
        let t2 = Poly::monomial(Rational::from(1), 2);
        assert_eq!(jackson_derivative(&t2, &qv).unwrap(), Poly::monomial(Rational::from(3), 1));
        assert!(jackson_derivative(&Poly::<Rational>::one(), &qv).unwrap().is_zero());
        assert!(jackson_derivative(&t2, &Rational::from(1)).is_err());
        let c = CFactorial::q_numbers(&qv, 11).unwrap();
        let (d_c, _) = ward_basis(&c, 11).unwrap();
        for k in 0..=10 {
            let tk = Poly::monomial(Rational::from(1), k);
            let direct = (&tk.dilate(&qv) - &tk).div_t().unwrap().scale(&(&qv - &Rational::from(1)).recip().unwrap());
            let jd = jackson_derivative(&tk, &qv).unwrap();
            assert_eq!(jd, direct);
            // Row k of D_c is c_k·t^{k−1} = [k]t^{k−1}.
            assert_eq!(d_c.row_poly(k).unwrap(), jd);
        }
    }

    #[test]
    fn cubic_c_is_not_orthogonal() {
        let c = c_polynomial(&[q(1, 1), q(1, 1), q(1, 1)], 10).unwrap();
        let (d_c, _) = ward_basis(&c, 10).unwrap();
        let neg_exp = PowerSeries::x(10).scale(&Rational::from(-1)).exp().unwrap();
        let a = series_of_matrix(&neg_exp, &d_c).unwrap();
        let pair = monomiality_pair(&a).unwrap();
        assert!(!pair.l.is_banded(-1, 1));
    }
}
