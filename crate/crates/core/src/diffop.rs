//! Differential-operator form of matrices: `A = Σₖ (Dᵏ/k!)·pₖ(X)`.
//!
//! The polynomials `pₖ` are read off the diagonals of `A` by a binomial
//! transform. Matrices of negative index split into a lower part handled the
//! same way and a band `B = Σ_{k≥1} pₖ(X̂)·D̂ᵏ/k!` above the main diagonal.

use alloc::vec;
use alloc::vec::Vec;

use crate::coeff::{binomial, Rational, Ring};
use crate::error::{Error, Result};
use crate::matrix::{MatrixIndex, TruncMatrix};
use crate::poly::Poly;
use crate::series::PowerSeries;

/// The polynomials `p₀, …, p_{K-1}`.
#[derive(Clone, PartialEq, Debug)]
pub struct DiffOpRep<R: Ring> {
    ps: Vec<Poly<R>>,
}

impl<R: Ring> DiffOpRep<R> {
    pub fn new(ps: Vec<Poly<R>>) -> Self {
        DiffOpRep { ps }
    }

    /// Representation of `I`: `p₀ = 1`, all others zero.
    pub fn identity(k: usize) -> Self {
        let mut ps = vec![Poly::zero(); k];
        if k > 0 {
            ps[0] = Poly::one();
        }
        DiffOpRep { ps }
    }

    pub fn ps(&self) -> &[Poly<R>] {
        &self.ps
    }

    pub fn into_ps(self) -> Vec<Poly<R>> {
        self.ps
    }

    /// The truncation count `K`.
    pub fn len(&self) -> usize {
        self.ps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ps.is_empty()
    }

    /// `Σ pₖ(t) xᵏ/k!`.
    pub fn egf_at(&self, t: &R) -> PowerSeries<R> {
        PowerSeries::from_egf(&self.ps.iter().map(|p| p.eval(t)).collect::<Vec<_>>())
    }
}

fn sign(e: usize) -> Rational {
    Rational::from(if e % 2 == 0 { 1 } else { -1 })
}

/// `d(k,r) = Σ_{j=r}^{k} C(k,j)(−1)^{k−j} a_{j,j−r}` and
/// `pₖ(t) = Σ_r d(k,r) t^{k−r}`, for `k < valid_rows(A)`.
pub fn decompose<R: Ring>(a: &TruncMatrix<R>) -> Result<DiffOpRep<R>> {
    if let MatrixIndex::Finite(m) = a.index_of() {
        if m < 0 {
            return Err(Error::WrongIndex { expected: "non-negative", found: m });
        }
    }
    let n = a.valid_rows();
    let ps = (0..n)
        .map(|k| {
            let mut coeffs = vec![R::zero(); k + 1];
            for r in 0..=k {
                let mut d = R::zero();
                for j in r..=k {
                    let entry = a.get(j, j - r);
                    if !entry.is_zero() {
                        d = d.plus(&entry.scaled(&(binomial(k, j) * sign(k - j))));
                    }
                }
                coeffs[k - r] = d;
            }
            Poly::new(coeffs)
        })
        .collect();
    Ok(DiffOpRep { ps })
}

/// `Σₖ (Dᵏ/k!)·pₖ(X)` on the first `min(n, K)` rows.
///
/// The term `(Dᵏ/k!)·tⁱ(X)` is the single diagonal `(j, j−k+i) ↦ C(j,k)`,
/// so row `j` only involves `p₀, …, p_j` and is exact whenever `j < K`.
pub fn reconstruct<R: Ring>(rep: &DiffOpRep<R>, n: usize) -> Result<TruncMatrix<R>> {
    let vr = n.min(rep.len());
    if vr == 0 {
        return Err(Error::TruncationExhausted);
    }
    let bound = rep
        .ps
        .iter()
        .enumerate()
        .filter_map(|(k, p)| p.degree().map(|d| k as i64 - d as i64))
        .min()
        .unwrap_or(0)
        .min(0);
    let mut m = TruncMatrix::zero(bound, vr);
    for j in 0..vr {
        for (k, p) in rep.ps.iter().enumerate().take(j + 1) {
            let c = binomial(j, k);
            for (i, coef) in p.coeffs().iter().enumerate() {
                if coef.is_zero() {
                    continue;
                }
                let col = j + i - k;
                let prev: R = m.get(j, col);
                m.set(j, col, prev.plus(&coef.scaled(&c)))?;
            }
        }
    }
    Ok(m)
}

/// `pₖ(t) = Σ_{j≤k} C(k,j) uⱼ(t) (−t)^{k−j}`.
pub fn binom_transform<R: Ring>(us: &[Poly<R>]) -> Vec<Poly<R>> {
    let minus_t = Poly::monomial(R::from_i64(-1), 1);
    transform(us, &minus_t)
}

/// `uₖ(t) = Σ_{j≤k} C(k,j) pⱼ(t) t^{k−j}`.
pub fn inverse_binom_transform<R: Ring>(ps: &[Poly<R>]) -> Vec<Poly<R>> {
    transform(ps, &Poly::t())
}

fn transform<R: Ring>(src: &[Poly<R>], base: &Poly<R>) -> Vec<Poly<R>> {
    let mut powers = vec![Poly::one()];
    for _ in 1..src.len() {
        let next = powers.last().expect("nonempty") * base;
        powers.push(next);
    }
    (0..src.len())
        .map(|k| {
            (0..=k).fold(Poly::zero(), |acc, j| {
                &acc + &(&src[j] * &powers[k - j]).scale_rational(&binomial(k, j))
            })
        })
        .collect()
}

/// `s_{k,i}(t) = Σ_{j=i}^{k} C(k,j)·(uⱼ⁽ⁱ⁾(t)/i!)·(−t)^{k−j}` for
/// `0 ≤ i ≤ k < K`, with `uⱼ` the rows of `a`.
pub fn s_table<R: Ring>(a: &TruncMatrix<R>, k_max: usize) -> Result<Vec<Vec<Poly<R>>>> {
    check_index_zero(a)?;
    let k_max = k_max.min(a.valid_rows());
    let us = a.row_polys();
    let minus_t = Poly::monomial(R::from_i64(-1), 1);
    let mut powers = vec![Poly::<R>::one()];
    for _ in 1..k_max {
        let next = powers.last().expect("nonempty") * &minus_t;
        powers.push(next);
    }
    Ok((0..k_max)
        .map(|k| {
            (0..=k)
                .map(|i| {
                    (i..=k).fold(Poly::zero(), |acc, j| {
                        let term = &us[j].derivative_over_factorial(i) * &powers[k - j];
                        &acc + &term.scale_rational(&binomial(k, j))
                    })
                })
                .collect()
        })
        .collect())
}

/// The same table from the `p`-form
/// `s_{k,i} = Σ_{j=0}^{i} C(k,j)·p_{k−j}^{(i−j)}(t)/(i−j)!`.
pub fn s_table_from_rep<R: Ring>(rep: &DiffOpRep<R>) -> Vec<Vec<Poly<R>>> {
    (0..rep.len())
        .map(|k| {
            (0..=k)
                .map(|i| {
                    (0..=i).fold(Poly::zero(), |acc, j| {
                        let d = rep.ps[k - j].derivative_over_factorial(i - j);
                        &acc + &d.scale_rational(&binomial(k, j))
                    })
                })
                .collect()
        })
        .collect()
}

fn check_index_zero<R: Ring>(a: &TruncMatrix<R>) -> Result<()> {
    match a.index_of() {
        MatrixIndex::Finite(m) if m < 0 => Err(Error::WrongIndex { expected: "non-negative", found: m }),
        _ => Ok(()),
    }
}

/// Representation of `A·B` from `A` and the representation `{qᵢ}` of `B`:
/// `rₖ = Σ_{i≤k} s_{k,i}·qᵢ`.
pub fn mul_in_rep<R: Ring>(a: &TruncMatrix<R>, rep_b: &DiffOpRep<R>) -> Result<DiffOpRep<R>> {
    let k = a.valid_rows().min(rep_b.len());
    let s = s_table(a, k)?;
    let ps = (0..k)
        .map(|kk| (0..=kk).fold(Poly::zero(), |acc, i| &acc + &(&s[kk][i] * &rep_b.ps[i])))
        .collect();
    Ok(DiffOpRep { ps })
}

/// `XA − AX = Σₖ (Dᵏ/k!)·p_{k+1}(X)`.
pub fn pincherle_x<R: Ring>(rep: &DiffOpRep<R>) -> DiffOpRep<R> {
    DiffOpRep { ps: rep.ps.iter().skip(1).cloned().collect() }
}

/// `AD − DA = Σ_{k≥1} (Dᵏ/k!)·pₖ′(X)`.
pub fn pincherle_d<R: Ring>(rep: &DiffOpRep<R>) -> DiffOpRep<R> {
    let ps = rep
        .ps
        .iter()
        .enumerate()
        .map(|(k, p)| if k == 0 { Poly::zero() } else { p.derivative() })
        .collect();
    DiffOpRep { ps }
}

/// `XⁿA = Σₖ (Dᵏ/k!)·Σ_{j≤n} C(n,j) X^{n−j} p_{k+j}(X)`, with `K − n` terms.
pub fn xn_mul<R: Ring>(rep: &DiffOpRep<R>, n: usize) -> Result<DiffOpRep<R>> {
    if n >= rep.len() {
        return Err(Error::TruncationExhausted);
    }
    let ps = (0..rep.len() - n)
        .map(|k| {
            (0..=n).fold(Poly::zero(), |acc, j| {
                &acc + &rep.ps[k + j].shift_up(n - j).scale_rational(&binomial(n, j))
            })
        })
        .collect();
    Ok(DiffOpRep { ps })
}

/// `(Dⁿ/n!)·A`, whose `k`-th polynomial is `C(k,n)·p_{k−n}`.
pub fn dn_mul<R: Ring>(rep: &DiffOpRep<R>, n: usize) -> DiffOpRep<R> {
    let ps = (0..rep.len())
        .map(|k| if k < n { Poly::zero() } else { rep.ps[k - n].scale_rational(&binomial(k, n)) })
        .collect();
    DiffOpRep { ps }
}

/// A matrix of index `−m < 0` split as `R = A + B`, with `A` the part on
/// or below the main diagonal and `B` the band above it.
#[derive(Clone, PartialEq, Debug)]
pub struct NegIndexRep<R: Ring> {
    pub lower: DiffOpRep<R>,
    /// `p₁, p₂, …` of the band; entry `i` holds `p_{i+1}`.
    pub upper_ps: Vec<Poly<R>>,
    /// Band width `m`.
    pub width: usize,
}

/// `e_{k,j} = Σ_{i<k} C(k,i+j)(−1)^{k−i−j} b_{i,i+j}` and
/// `pₖ(t) = Σ_{j=1}^{min(k,m)} e_{k,j} t^{k−j}` for `1 ≤ k ≤ valid_rows`.
pub fn neg_decompose<R: Ring>(r: &TruncMatrix<R>) -> Result<NegIndexRep<R>> {
    let m = match r.index_of() {
        MatrixIndex::Finite(m) if m < 0 => (-m) as usize,
        MatrixIndex::Finite(m) => return Err(Error::WrongIndex { expected: "negative", found: m }),
        MatrixIndex::Infinite => return Err(Error::WrongIndex { expected: "negative", found: i64::MAX }),
    };
    let n = r.valid_rows();
    let lower_part = TruncMatrix::from_fn(0, n, |j, k| r.get(j, k));
    let lower = decompose(&lower_part)?;
    let upper_ps = (1..=n)
        .map(|k| {
            let mut coeffs = vec![R::zero(); k];
            for j in 1..=k.min(m) {
                let mut e = R::zero();
                for i in 0..k {
                    if i + j > k {
                        break;
                    }
                    let b = r.get(i, i + j);
                    if !b.is_zero() {
                        e = e.plus(&b.scaled(&(binomial(k, i + j) * sign(k - i - j))));
                    }
                }
                coeffs[k - j] = e;
            }
            Poly::new(coeffs)
        })
        .collect();
    Ok(NegIndexRep { lower, upper_ps, width: m })
}

/// The band `Σₖ pₖ(X̂)·D̂ᵏ/k!` over `1 ≤ k ≤ upper_limit` (all stored `k`
/// when `None`).
///
/// The term `e_{k,j}·X̂^{k−j}·D̂ᵏ/k!` puts `e_{k,j}·C(i+j, k)` at
/// `(i, i+j)`, so row `i` needs `pₖ` up to `k = i + m`; the result is exact
/// on the first `K − m + 1` rows.
pub fn reconstruct_band<R: Ring>(rep: &NegIndexRep<R>, n: usize, upper_limit: Option<usize>) -> Result<TruncMatrix<R>> {
    let stored = rep.upper_ps.len();
    let vr = (stored + 1).saturating_sub(rep.width).min(n);
    if vr == 0 {
        return Err(Error::TruncationExhausted);
    }
    let limit = upper_limit.unwrap_or(stored).min(stored);
    let m = rep.width;
    let mut out = TruncMatrix::zero(-(m as i64), vr);
    for i in 0..vr {
        for j in 1..=m {
            let mut acc = R::zero();
            for k in j..=limit.min(i + j) {
                let e = rep.upper_ps[k - 1].coeff(k - j);
                if !e.is_zero() {
                    acc = acc.plus(&e.scaled(&binomial(i + j, k)));
                }
            }
            out.set(i, i + j, acc)?;
        }
    }
    Ok(out)
}

/// Lower part plus band, exact on `min(n, K − m + 1)` rows.
pub fn reconstruct_neg<R: Ring>(rep: &NegIndexRep<R>, n: usize) -> Result<TruncMatrix<R>> {
    let band = reconstruct_band(rep, n, None)?;
    let lower = reconstruct(&rep.lower, n)?;
    Ok(lower.add(&band))
}
