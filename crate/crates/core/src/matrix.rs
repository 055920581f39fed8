//! Truncations of generalized lower Hessenberg matrices.
//!
//! A [`TruncMatrix`] holds the first `valid_rows` rows of an infinite matrix
//! with `a[j][k] = 0` whenever `j - k < index_bound`. Because the index is
//! bounded below, each of those rows has finitely many entries and is stored
//! completely, so every stored row is exact. Products shrink the number of
//! exact rows by the rule `vr(AB) = min(vr(A), vr(B) + ind(A))`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::coeff::{factorial, Rational, Ring};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::series::PowerSeries;

/// The index of a matrix: lowest diagonal carrying a nonzero entry, or
/// infinity for the zero matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixIndex {
    Finite(i64),
    Infinite,
}

impl MatrixIndex {
    pub fn finite(self) -> Option<i64> {
        match self {
            MatrixIndex::Finite(m) => Some(m),
            MatrixIndex::Infinite => None,
        }
    }
}

impl PartialOrd for MatrixIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MatrixIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (MatrixIndex::Finite(a), MatrixIndex::Finite(b)) => a.cmp(b),
            (MatrixIndex::Finite(_), MatrixIndex::Infinite) => Ordering::Less,
            (MatrixIndex::Infinite, MatrixIndex::Finite(_)) => Ordering::Greater,
            (MatrixIndex::Infinite, MatrixIndex::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for MatrixIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixIndex::Finite(m) => write!(f, "{m}"),
            MatrixIndex::Infinite => f.write_str("inf"),
        }
    }
}

/// Distinguished elements of the algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    /// Shift, `X[j][j+1] = 1`; row action `tᵏ ↦ tᵏ⁻¹`, left action `uₖ ↦ uₖ₊₁`.
    X,
    /// Transpose of `X`.
    Xhat,
    /// Differentiation, `D[k+1][k] = k+1`.
    D,
    /// Transpose of `D`.
    Dhat,
    /// `Diag(0!, 1!, 2!, …)`.
    F,
    Finv,
    /// `Diag(1, 2, 3, …)`.
    N,
    /// Integration, `J[k][k+1] = 1/(k+1)`.
    J,
    /// `Diag(0, 1, 1, …)`.
    J0,
    I,
}

impl Basis {
    pub const ALL: [Basis; 10] = [
        Basis::X,
        Basis::Xhat,
        Basis::D,
        Basis::Dhat,
        Basis::F,
        Basis::Finv,
        Basis::N,
        Basis::J,
        Basis::J0,
        Basis::I,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Basis::X => "X",
            Basis::Xhat => "Xhat",
            Basis::D => "D",
            Basis::Dhat => "Dhat",
            Basis::F => "F",
            Basis::Finv => "Finv",
            Basis::N => "N",
            Basis::J => "J",
            Basis::J0 => "J0",
            Basis::I => "I",
        }
    }
}

impl FromStr for Basis {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Basis::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::UnknownBasis(String::from(s)))
    }
}

#[derive(Clone)]
pub struct TruncMatrix<R> {
    index_bound: i64,
    valid_rows: usize,
    /// Row `j` holds columns `0..=j - index_bound` (empty when negative).
    rows: Vec<Vec<R>>,
}

fn row_len(j: usize, bound: i64) -> usize {
    let len = j as i64 - bound + 1;
    if len > 0 {
        len as usize
    } else {
        0
    }
}

impl<R: Ring> TruncMatrix<R> {
    pub fn zero(index_bound: i64, valid_rows: usize) -> Self {
        let rows = (0..valid_rows)
            .map(|j| vec![R::zero(); row_len(j, index_bound)])
            .collect();
        TruncMatrix { index_bound, valid_rows, rows }
    }

    /// Fill every admissible position `(j, k)` with `f(j, k)`.
    pub fn from_fn(index_bound: i64, valid_rows: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let rows = (0..valid_rows)
            .map(|j| (0..row_len(j, index_bound)).map(|k| f(j, k)).collect())
            .collect();
        TruncMatrix { index_bound, valid_rows, rows }
    }

    /// Build from explicit rows. Rows may be shorter than their admissible
    /// length (missing entries are zero); entries beyond it must be zero.
    pub fn from_rows(index_bound: i64, rows: Vec<Vec<R>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::TruncationExhausted);
        }
        let valid_rows = rows.len();
        let mut out = Vec::with_capacity(valid_rows);
        for (j, mut row) in rows.into_iter().enumerate() {
            let len = row_len(j, index_bound);
            if row.len() > len {
                if row[len..].iter().any(|e| !e.is_zero()) {
                    return Err(Error::Precondition("entry above the index bound is nonzero"));
                }
                row.truncate(len);
            }
            row.resize(len, R::zero());
            out.push(row);
        }
        Ok(TruncMatrix { index_bound, valid_rows, rows: out })
    }

    /// A matrix whose only nonzero entries lie on diagonal `d`: entry
    /// `entries[k]` sits at `(k + d, k)` for `d ≥ 0` and at `(k, k - d)` for
    /// `d < 0`. The exact rows are those for which an entry was supplied.
    pub fn from_diagonal(d: i64, entries: &[R]) -> Self {
        let valid_rows = if d >= 0 { entries.len() + d as usize } else { entries.len() };
        let mut m = TruncMatrix::zero(d, valid_rows);
        for (k, e) in entries.iter().enumerate() {
            let (j, col) = if d >= 0 { (k + d as usize, k) } else { (k, k + (-d) as usize) };
            if j < valid_rows {
                m.rows[j][col] = e.clone();
            }
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        TruncMatrix::from_fn(0, n, |j, k| if j == k { R::one() } else { R::zero() })
    }

    pub fn basis(which: Basis, n: usize) -> Self {
        let q = |r: Rational| R::from_rational(r);
        let at = |bound: i64, val: &dyn Fn(usize) -> Option<(usize, R)>| {
            let mut m = TruncMatrix::zero(bound, n);
            for j in 0..n {
                if let Some((k, v)) = val(j) {
                    m.rows[j][k] = v;
                }
            }
            m
        };
        match which {
            Basis::X => at(-1, &|j| Some((j + 1, R::one()))),
            Basis::Xhat => at(1, &|j| (j >= 1).then(|| (j - 1, R::one()))),
            Basis::D => at(1, &|j| (j >= 1).then(|| (j - 1, R::from_i64(j as i64)))),
            Basis::Dhat => at(-1, &|j| Some((j + 1, R::from_i64(j as i64 + 1)))),
            Basis::F => at(0, &|j| Some((j, q(factorial(j))))),
            Basis::Finv => at(0, &|j| Some((j, q(factorial(j).recip().expect("nonzero"))))),
            Basis::N => at(0, &|j| Some((j, R::from_i64(j as i64 + 1)))),
            Basis::J => at(-1, &|j| Some((j + 1, q(Rational::new(1, j as i64 + 1))))),
            Basis::J0 => at(0, &|j| Some((j, if j == 0 { R::zero() } else { R::one() }))),
            Basis::I => TruncMatrix::identity(n),
        }
    }

    pub fn index_bound(&self) -> i64 {
        self.index_bound
    }

    pub fn valid_rows(&self) -> usize {
        self.valid_rows
    }

    pub fn row(&self, j: usize) -> &[R] {
        &self.rows[j]
    }

    pub fn rows(&self) -> &[Vec<R>] {
        &self.rows
    }

    /// Entry `(j, k)`; zero outside the stored pattern. Panics for `j ≥ valid_rows`.
    pub fn get(&self, j: usize, k: usize) -> R {
        assert!(j < self.valid_rows, "row {j} outside the exact rows 0..{}", self.valid_rows);
        self.rows[j].get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn set(&mut self, j: usize, k: usize, value: R) -> Result<()> {
        if j >= self.valid_rows {
            return Err(Error::OutOfRange { index: j, limit: self.valid_rows });
        }
        let len = row_len(j, self.index_bound);
        if k >= len {
            return Err(Error::Precondition("position lies above the index bound"));
        }
        self.rows[j][k] = value;
        Ok(())
    }

    /// Least diagonal with a nonzero entry among the exact rows.
    pub fn index_of(&self) -> MatrixIndex {
        let mut best: Option<i64> = None;
        for (j, row) in self.rows.iter().enumerate() {
            if let Some(k) = row.iter().rposition(|e| !e.is_zero()) {
                let d = j as i64 - k as i64;
                best = Some(best.map_or(d, |b| b.min(d)));
            }
        }
        best.map_or(MatrixIndex::Infinite, MatrixIndex::Finite)
    }

    pub fn is_zero(&self) -> bool {
        self.index_of() == MatrixIndex::Infinite
    }

    /// Highest diagonal with a nonzero entry among the exact rows.
    pub fn top_diagonal(&self) -> Option<i64> {
        let mut best: Option<i64> = None;
        for (j, row) in self.rows.iter().enumerate() {
            if let Some(k) = row.iter().position(|e| !e.is_zero()) {
                let d = j as i64 - k as i64;
                best = Some(best.map_or(d, |b| b.max(d)));
            }
        }
        best
    }

    /// True when every nonzero exact entry lies on a diagonal in `lo..=hi`.
    pub fn is_banded(&self, lo: i64, hi: i64) -> bool {
        self.rows.iter().enumerate().all(|(j, row)| {
            row.iter()
                .enumerate()
                .all(|(k, e)| e.is_zero() || (lo..=hi).contains(&(j as i64 - k as i64)))
        })
    }

    /// Entries of diagonal `d` within the exact rows, top to bottom.
    pub fn diagonal(&self, d: i64) -> Vec<R> {
        (0..self.valid_rows)
            .filter_map(|j| {
                let k = j as i64 - d;
                (k >= 0).then(|| self.get(j, k as usize))
            })
            .collect()
    }

    /// Keep only the first `n` exact rows.
    pub fn truncate_rows(&self, n: usize) -> Result<Self> {
        if n == 0 || n > self.valid_rows {
            return Err(Error::OutOfRange { index: n, limit: self.valid_rows + 1 });
        }
        Ok(TruncMatrix {
            index_bound: self.index_bound,
            valid_rows: n,
            rows: self.rows[..n].to_vec(),
        })
    }

    /// Re-store with a different index bound. Fails if a nonzero entry
    /// would fall above the new bound.
    pub fn with_index_bound(&self, bound: i64) -> Result<Self> {
        TruncMatrix::from_rows(bound, self.rows.clone())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> TruncMatrix<S> {
        TruncMatrix {
            index_bound: self.index_bound,
            valid_rows: self.valid_rows,
            rows: self.rows.iter().map(|r| r.iter().map(&f).collect()).collect(),
        }
    }

    pub fn try_map<S: Ring, E>(&self, f: impl Fn(&R) -> core::result::Result<S, E>) -> core::result::Result<TruncMatrix<S>, E> {
        let mut rows = Vec::with_capacity(self.valid_rows);
        for r in &self.rows {
            rows.push(r.iter().map(&f).collect::<core::result::Result<Vec<_>, E>>()?);
        }
        Ok(TruncMatrix { index_bound: self.index_bound, valid_rows: self.valid_rows, rows })
    }

    /// The exact rows restricted to columns `0..cols`, as a dense array.
    pub fn to_dense(&self, cols: usize) -> Vec<Vec<R>> {
        (0..self.valid_rows)
            .map(|j| (0..cols).map(|k| self.get(j, k)).collect())
            .collect()
    }

    fn lower_index(&self) -> i64 {
        self.index_of().finite().unwrap_or(self.index_bound).max(self.index_bound)
    }

    /// `C = A·B`, exact on `min(vr(A), vr(B) + ind(A))` rows.
    pub fn mul(&self, other: &TruncMatrix<R>) -> Result<TruncMatrix<R>> {
        let ind_a = self.lower_index();
        let ind_b = other.lower_index();
        let vr = (self.valid_rows as i64).min(other.valid_rows as i64 + ind_a);
        if vr < 1 {
            return Err(Error::TruncationExhausted);
        }
        let vr = vr as usize;
        let bound = ind_a + ind_b;
        let mut rows = Vec::with_capacity(vr);
        for i in 0..vr {
            let mut acc = vec![R::zero(); row_len(i, bound)];
            for (j, a) in self.rows[i].iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (k, b) in other.rows[j].iter().enumerate() {
                    if !b.is_zero() {
                        acc[k].add_mul(a, b);
                    }
                }
            }
            rows.push(acc);
        }
        Ok(TruncMatrix { index_bound: bound, valid_rows: vr, rows })
    }

    /// Product of several factors, left to right.
    pub fn product(factors: &[&TruncMatrix<R>]) -> Result<TruncMatrix<R>> {
        let (first, rest) = factors.split_first().ok_or(Error::TruncationExhausted)?;
        rest.iter().try_fold((*first).clone(), |acc, m| acc.mul(m))
    }

    pub fn pow(&self, e: usize) -> Result<TruncMatrix<R>> {
        let mut acc = TruncMatrix::identity(self.valid_rows);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    fn entrywise(&self, other: &TruncMatrix<R>, f: impl Fn(&R, &R) -> R) -> TruncMatrix<R> {
        let bound = self.index_bound.min(other.index_bound);
        let vr = self.valid_rows.min(other.valid_rows);
        TruncMatrix::from_fn(bound, vr, |j, k| f(&self.get(j, k), &other.get(j, k)))
    }

    pub fn add(&self, other: &TruncMatrix<R>) -> TruncMatrix<R> {
        self.entrywise(other, |a, b| a.plus(b))
    }

    pub fn sub(&self, other: &TruncMatrix<R>) -> TruncMatrix<R> {
        self.entrywise(other, |a, b| a.minus(b))
    }

    pub fn scale(&self, c: &R) -> TruncMatrix<R> {
        self.map(|e| e.times(c))
    }

    pub fn neg(&self) -> TruncMatrix<R> {
        self.map(Ring::negated)
    }

    /// Inverse of an element of the group of index-zero matrices with unit
    /// diagonal, by forward substitution. Exact on the same rows.
    pub fn invert(&self) -> Result<TruncMatrix<R>> {
        match self.index_of() {
            MatrixIndex::Finite(m) if m >= 0 => {}
            MatrixIndex::Finite(m) => {
                return Err(Error::WrongIndex { expected: "zero", found: m });
            }
            MatrixIndex::Infinite => return Err(Error::NotInGroup { row: 0 }),
        }
        let n = self.valid_rows;
        let mut inv: Vec<Vec<R>> = Vec::with_capacity(n);
        for i in 0..n {
            let diag = self.get(i, i);
            let d_inv = diag.inverse().ok_or(Error::NotInGroup { row: i })?;
            let mut row = vec![R::zero(); i + 1];
            row[i] = d_inv.clone();
            // a_ii x_ik = -Σ_{k ≤ j < i} a_ij x_jk
            for k in (0..i).rev() {
                let mut acc = R::zero();
                for j in k..i {
                    let a = self.get(i, j);
                    if !a.is_zero() && !inv[j][k].is_zero() {
                        acc.add_mul(&a, &inv[j][k]);
                    }
                }
                row[k] = if d_inv.is_one() { acc.negated() } else { acc.times(&d_inv).negated() };
            }
            inv.push(row);
        }
        Ok(TruncMatrix { index_bound: 0, valid_rows: n, rows: inv })
    }

    /// Polynomial `uₖ(t) = Σⱼ a[k][j] tʲ` of row `k`.
    pub fn row_poly(&self, k: usize) -> Result<Poly<R>> {
        if k >= self.valid_rows {
            return Err(Error::OutOfRange { index: k, limit: self.valid_rows });
        }
        Ok(Poly::new(self.rows[k].clone()))
    }

    pub fn row_polys(&self) -> Vec<Poly<R>> {
        self.rows.iter().map(|r| Poly::new(r.clone())).collect()
    }

    /// Series `fⱼ(x) = Σₖ a[k][j] xᵏ` of column `j`, to order `valid_rows`.
    pub fn col_series(&self, j: usize) -> Result<PowerSeries<R>> {
        if j >= self.valid_rows {
            return Err(Error::OutOfRange { index: j, limit: self.valid_rows });
        }
        Ok(PowerSeries::new((0..self.valid_rows).map(|k| self.get(k, j)).collect()))
    }

    /// Apply the operator `tᵏ ↦ (row k)` to `p`.
    pub fn apply_to_poly(&self, p: &Poly<R>) -> Result<Poly<R>> {
        if let Some(deg) = p.degree() {
            if deg >= self.valid_rows {
                return Err(Error::DegreeTooLarge { degree: deg, limit: self.valid_rows - 1 });
            }
        }
        let mut acc = Poly::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                acc = &acc + &Poly::new(self.rows[k].clone()).scale(c);
            }
        }
        Ok(acc)
    }

    /// First position `(row, col)` where `self` and `other` differ on their
    /// common exact rows.
    pub fn first_mismatch(&self, other: &TruncMatrix<R>) -> Option<(usize, usize)> {
        let vr = self.valid_rows.min(other.valid_rows);
        for j in 0..vr {
            let len = self.rows[j].len().max(other.rows[j].len());
            for k in 0..len {
                if self.get(j, k) != other.get(j, k) {
                    return Some((j, k));
                }
            }
        }
        None
    }

    /// Equality on the common exact rows.
    pub fn agrees_with(&self, other: &TruncMatrix<R>) -> bool {
        self.first_mismatch(other).is_none()
    }
}

/// Horner evaluation of `w(L)`.
pub fn matrix_poly_eval<R: Ring>(w: &Poly<R>, l: &TruncMatrix<R>) -> Result<TruncMatrix<R>> {
    let n = l.valid_rows();
    let mut coeffs = w.coeffs().iter().rev();
    let Some(lead) = coeffs.next() else {
        return Ok(TruncMatrix::zero(0, n));
    };
    let id = TruncMatrix::<R>::identity(n);
    let mut acc = id.scale(lead);
    for c in coeffs {
        acc = acc.mul(l)?;
        if !c.is_zero() {
            acc = acc.add(&id.scale(c));
        }
    }
    Ok(acc)
}

/// Semantic equality: same exact rows with equal entries.
impl<R: Ring> PartialEq for TruncMatrix<R> {
    fn eq(&self, other: &Self) -> bool {
        self.valid_rows == other.valid_rows && self.agrees_with(other)
    }
}

impl<R: Ring> fmt::Debug for TruncMatrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "TruncMatrix(index_bound={}, valid_rows={})", self.index_bound, self.valid_rows)?;
        for (j, row) in self.rows.iter().enumerate() {
            write!(f, "  {j}:")?;
            for e in row {
                write!(f, " {e}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = TruncMatrix<Rational>;

    fn b(which: Basis, n: usize) -> M {
        M::basis(which, n)
    }

    fn diag(entries: &[i64]) -> M {
        let e: Vec<Rational> = entries.iter().map(|&x| Rational::from(x)).collect();
        M::from_diagonal(0, &e)
    }

    #[test]
    fn x_times_xhat_is_identity() {
        let p = b(Basis::X, 8).mul(&b(Basis::Xhat, 8)).unwrap();
        assert_eq!(p.valid_rows(), 7);
        assert!(p.agrees_with(&M::identity(8)));
    }

    #[test]
    fn xhat_times_x_is_j0() {
        let p = b(Basis::Xhat, 8).mul(&b(Basis::X, 8)).unwrap();
        assert!(p.agrees_with(&b(Basis::J0, 8)));
        assert_eq!(p.valid_rows(), 8);
    }

    #[test]
    fn xd_and_dx() {
        let xd = b(Basis::X, 8).mul(&b(Basis::D, 8)).unwrap();
        assert!(xd.agrees_with(&b(Basis::N, 8)));
        let dx = b(Basis::D, 8).mul(&b(Basis::X, 8)).unwrap();
        assert!(dx.agrees_with(&diag(&[0, 1, 2, 3, 4, 5, 6, 7])));
        let comm = xd.sub(&dx);
        assert!(comm.agrees_with(&M::identity(8)));
        assert_eq!(comm.valid_rows(), 7);
    }

    #[test]
    fn identity_is_neutral() {
        let a = M::from_fn(0, 6, |j, k| Rational::new(j as i64 + 2 * k as i64 + 1, 3));
        let p = a.mul(&M::identity(6)).unwrap();
        assert_eq!(p, a);
        assert_eq!(a.add(&M::zero(0, 6)), a);
        let two = Rational::from(2);
        assert!(M::identity(5).scale(&two).add(&M::identity(5).scale(&-&two)).is_zero());
    }

    #[test]
    fn indices() {
        assert_eq!(b(Basis::X, 5).index_of(), MatrixIndex::Finite(-1));
        assert_eq!(b(Basis::D, 5).index_of(), MatrixIndex::Finite(1));
        assert_eq!(M::zero(0, 5).index_of(), MatrixIndex::Infinite);
        assert!(MatrixIndex::Finite(100) < MatrixIndex::Infinite);
    }

    #[test]
    fn truncation_exhausts() {
        let x = b(Basis::X, 2);
        let x2 = x.mul(&x).unwrap();
        assert_eq!(x2.valid_rows(), 1);
        assert_eq!(x2.mul(&x), Err(Error::TruncationExhausted));
    }

    #[test]
    fn inversion() {
        assert_eq!(M::identity(6).invert().unwrap(), M::identity(6));
        let f = b(Basis::F, 7);
        let p = f.invert().unwrap().mul(&f).unwrap();
        assert_eq!(p, M::identity(7));
        assert_eq!(b(Basis::J0, 4).invert(), Err(Error::NotInGroup { row: 0 }));
        assert!(matches!(b(Basis::X, 4).invert(), Err(Error::WrongIndex { .. })));
    }

    #[test]
    fn inverts_commutator_with_negative_bound() {
        // XD − DX stored with bound −1 is still the identity.
        let c = b(Basis::X, 6).mul(&b(Basis::D, 6)).unwrap().sub(&b(Basis::D, 6).mul(&b(Basis::X, 6)).unwrap());
        let c = c.with_index_bound(-1).unwrap();
        assert_eq!(c.index_bound(), -1);
        assert!(c.invert().unwrap().agrees_with(&M::identity(6)));
    }

    #[test]
    fn row_polys_and_columns() {
        let t3 = M::identity(5).row_poly(3).unwrap();
        assert_eq!(t3, Poly::monomial(Rational::from(1), 3));
        assert_eq!(b(Basis::F, 5).row_poly(2).unwrap(), Poly::monomial(Rational::from(2), 2));
        assert!(M::identity(5).row_poly(5).is_err());
        let c0 = M::identity(4).col_series(0).unwrap();
        assert_eq!(c0.coeffs()[0], Rational::from(1));
        assert!(c0.coeffs()[1..].iter().all(Ring::is_zero));
        let x = b(Basis::Xhat, 4).col_series(0).unwrap();
        assert_eq!(x.coeffs()[1], Rational::from(1));
    }

    #[test]
    fn operator_on_polynomials() {
        let p = Poly::new(vec![Rational::from(1), Rational::from(-2), Rational::from(3)]);
        assert_eq!(M::identity(4).apply_to_poly(&p).unwrap(), p);
        // Rows of X̂ send tᵏ to tᵏ⁻¹; rows of X send tᵏ to tᵏ⁺¹.
        let t2 = Poly::monomial(Rational::from(1), 2);
        assert_eq!(b(Basis::X, 4).apply_to_poly(&t2).unwrap(), Poly::monomial(Rational::from(1), 3));
        assert_eq!(b(Basis::Xhat, 4).apply_to_poly(&t2).unwrap(), Poly::monomial(Rational::from(1), 1));
        assert!(M::identity(3).apply_to_poly(&Poly::monomial(Rational::from(1), 3)).is_err());
    }

    #[test]
    fn matrix_polynomials() {
        let x = b(Basis::X, 6);
        assert_eq!(matrix_poly_eval(&Poly::one(), &x).unwrap(), M::identity(6));
        assert!(matrix_poly_eval(&Poly::t(), &x).unwrap().agrees_with(&x));
    }

    #[test]
    fn diagonal_spec() {
        let d = M::from_diagonal(2, &[Rational::from(5), Rational::from(6)]);
        assert_eq!(d.valid_rows(), 4);
        assert_eq!(d.get(2, 0), Rational::from(5));
        assert_eq!(d.get(3, 1), Rational::from(6));
        let u = M::from_diagonal(-1, &[Rational::from(7)]);
        assert_eq!(u.get(0, 1), Rational::from(7));
    }

    #[test]
    fn shift_semantics() {
        let a = M::from_fn(0, 6, |j, k| Rational::from((j * 3 + k) as i64 % 5 + 1));
        let x = b(Basis::X, 7);
        let ax = a.mul(&x).unwrap();
        let ad = a.mul(&b(Basis::D, 7)).unwrap();
        let axhat = a.mul(&b(Basis::Xhat, 7)).unwrap();
        let da = b(Basis::D, 6).mul(&a).unwrap();
        for k in 0..6 {
            let u = a.row_poly(k).unwrap();
            assert_eq!(ax.row_poly(k).unwrap(), &u * &Poly::t());
            assert_eq!(ad.row_poly(k).unwrap(), u.derivative());
            let lowered = (&u - &Poly::constant(u.coeff(0))).div_t().unwrap();
            assert_eq!(axhat.row_poly(k).unwrap(), lowered);
            let expect = if k == 0 {
                Poly::zero()
            } else {
                a.row_poly(k - 1).unwrap().scale(&Rational::from(k as i64))
            };
            assert_eq!(da.row_poly(k).unwrap(), expect);
        }
    }

    #[test]
    fn basis_names_round_trip() {
        for b in Basis::ALL {
            assert_eq!(b.name().parse::<Basis>().unwrap(), b);
        }
        assert!("Y".parse::<Basis>().is_err());
    }
}
