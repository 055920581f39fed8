//! Constructors for the named families of polynomial sequences, with the
//! closed forms of their operators.
//!
//! Series arguments are ordinary-coefficient [`PowerSeries`]; build them
//! with [`PowerSeries::from_egf`] or [`PowerSeries::from_cegf`] when the
//! data come in exponential form.
//!
//! [`PowerSeries`]: crate::series::PowerSeries
//! [`PowerSeries::from_egf`]: crate::series::PowerSeries::from_egf
//! [`PowerSeries::from_cegf`]: crate::series::PowerSeries::from_cegf

mod appell;
mod binomial;
mod ortho;
mod ward;

pub use appell::{appell_from_h, appell_h, appell_l, appell_m, appell_matrix, appell_orthogonal, AppellOrthogonal};
pub use binomial::{binomial_type, composition_matrix, riordan_matrix, sheffer, BinomialType, Sheffer};
pub use ortho::{ortho_solve, OrthoSolution, OrthoSpec};
pub use ward::{
    c_polynomial, jackson_derivative, laguerre_general, ward_basis, ward_family, ward_l_degree_one, ward_to_hermite,
    LaguerreGeneral, WardFamily, WardToHermite,
};

use crate::coeff::Ring;
use crate::error::Result;
use crate::matrix::{Basis, TruncMatrix};
use crate::series::{series_of_matrix, PowerSeries};

/// `g(D)` at size `n`.
pub(crate) fn of_d<R: Ring>(g: &PowerSeries<R>, n: usize) -> Result<TruncMatrix<R>> {
    series_of_matrix(g, &TruncMatrix::basis(Basis::D, n))
}
