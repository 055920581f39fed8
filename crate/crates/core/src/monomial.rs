//! Monomiality operators of an invertible matrix.
//!
//! For `A` in the group, the rows `uₖ` satisfy `M̂uₖ = uₖ₊₁` and
//! `P̂uₖ = k·uₖ₋₁` with `M = A⁻¹XA` and `P = A⁻¹DA`. The conjugates in the
//! other direction, `L = AXA⁻¹` and `ADA⁻¹`, act on the dual side.

use alloc::vec;
use alloc::vec::Vec;

use crate::coeff::Ring;
use crate::error::{Error, Result};
use crate::matrix::{Basis, TruncMatrix};
use crate::poly::Poly;

/// The operators attached to an invertible `A`.
///
/// `shift` and `deriv` are `X` and `D` for ordinary families; Ward-type
/// families use their own `X_c` and `D_c`.
#[derive(Clone, Debug, PartialEq)]
pub struct MonomialityPair<R: Ring> {
    pub source: TruncMatrix<R>,
    pub shift: TruncMatrix<R>,
    pub deriv: TruncMatrix<R>,
    /// `A⁻¹·shift·A`.
    pub m: TruncMatrix<R>,
    /// `A⁻¹·deriv·A`.
    pub p: TruncMatrix<R>,
    /// `A·shift·A⁻¹`.
    pub l: TruncMatrix<R>,
    /// `A⁻¹JA`, a left inverse of `P`.
    pub q: TruncMatrix<R>,
    /// `A·deriv·A⁻¹`; satisfies `L·conj_d − conj_d·L = I`.
    pub conj_d: TruncMatrix<R>,
}

/// The pair with respect to `X` and `D`.
pub fn monomiality_pair<R: Ring>(a: &TruncMatrix<R>) -> Result<MonomialityPair<R>> {
    let n = a.valid_rows();
    monomiality_pair_with(a, &TruncMatrix::basis(Basis::X, n), &TruncMatrix::basis(Basis::D, n))
}

/// The pair with respect to an arbitrary shift and derivative.
pub fn monomiality_pair_with<R: Ring>(
    a: &TruncMatrix<R>,
    shift: &TruncMatrix<R>,
    deriv: &TruncMatrix<R>,
) -> Result<MonomialityPair<R>> {
    let inv = a.invert()?;
    let n = a.valid_rows();
    let j = TruncMatrix::basis(Basis::J, n);
    Ok(MonomialityPair {
        m: TruncMatrix::product(&[&inv, shift, a])?,
        p: TruncMatrix::product(&[&inv, deriv, a])?,
        l: TruncMatrix::product(&[a, shift, &inv])?,
        q: TruncMatrix::product(&[&inv, &j, a])?,
        conj_d: TruncMatrix::product(&[a, deriv, &inv])?,
        source: a.clone(),
        shift: shift.clone(),
        deriv: deriv.clone(),
    })
}

/// Which identity failed and where.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub identity: &'static str,
    pub row: usize,
    pub col: usize,
}

fn compare<R: Ring>(
    identity: &'static str,
    lhs: Result<TruncMatrix<R>>,
    rhs: Result<TruncMatrix<R>>,
) -> Option<Mismatch> {
    let (row, col) = match (lhs, rhs) {
        (Ok(l), Ok(r)) => l.first_mismatch(&r)?,
        _ => (0, 0),
    };
    Some(Mismatch { identity, row, col })
}

/// Checks `A·M = shift·A` and `A·P = deriv·A` on the common exact rows.
pub fn monomiality_mismatch<R: Ring>(pair: &MonomialityPair<R>) -> Option<Mismatch> {
    let a = &pair.source;
    compare("A*M = X*A", a.mul(&pair.m), pair.shift.mul(a))
        .or_else(|| compare("A*P = D*A", a.mul(&pair.p), pair.deriv.mul(a)))
}

pub fn verify_monomiality<R: Ring>(pair: &MonomialityPair<R>) -> bool {
    monomiality_mismatch(pair).is_none()
}

/// `N = A⁻¹X̂A`, a right inverse of `M`.
pub fn right_inverse_of_m<R: Ring>(a: &TruncMatrix<R>) -> Result<TruncMatrix<R>> {
    let inv = a.invert()?;
    let xh = TruncMatrix::basis(Basis::Xhat, a.valid_rows());
    TruncMatrix::product(&[&inv, &xh, a])
}

/// `Diag(a₀₀, a₁₁, …)⁻¹·A`, whose rows are the monic versions of `A`'s.
pub fn monic_normalize<R: Ring>(a: &TruncMatrix<R>) -> Result<TruncMatrix<R>> {
    let diag: Vec<R> = (0..a.valid_rows())
        .map(|k| a.get(k, k).inverse().ok_or(Error::NotInGroup { row: k }))
        .collect::<Result<_>>()?;
    TruncMatrix::from_diagonal(0, &diag).mul(a)
}

/// `φₘ(w) = w(L)_{0,m}` with `L = AXA⁻¹`; needs `a₀₀ = 1`.
pub fn dual_functional<R: Ring>(a: &TruncMatrix<R>, m: usize, w: &Poly<R>) -> Result<R> {
    if !a.get(0, 0).is_one() {
        return Err(Error::Precondition("dual functionals need a[0][0] = 1"));
    }
    let inv = a.invert()?;
    let x = TruncMatrix::basis(Basis::X, a.valid_rows());
    let l = TruncMatrix::product(&[a, &x, &inv])?;
    dual_functional_from_l(&l, m, w)
}

/// `w(L)_{0,m}` by iterating the row vector `e₀ᵀLⁱ`.
pub fn dual_functional_from_l<R: Ring>(l: &TruncMatrix<R>, m: usize, w: &Poly<R>) -> Result<R> {
    let deg = w.degree().unwrap_or(0);
    if deg > l.valid_rows() {
        return Err(Error::TruncationExhausted);
    }
    let mut v = vec![R::one()];
    let mut acc = w.coeff(0).times(&v.get(m).cloned().unwrap_or_else(R::zero));
    for i in 1..=deg {
        let mut next: Vec<R> = Vec::new();
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            let row = l.row(j);
            if next.len() < row.len() {
                next.resize(row.len(), R::zero());
            }
            for (k, e) in row.iter().enumerate() {
                if !e.is_zero() {
                    next[k] = next[k].plus(&vj.times(e));
                }
            }
        }
        v = next;
        let wi = w.coeff(i);
        if !wi.is_zero() {
            if let Some(vm) = v.get(m) {
                acc = acc.plus(&wi.times(vm));
            }
        }
    }
    Ok(acc)
}
