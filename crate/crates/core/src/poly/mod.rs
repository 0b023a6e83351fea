//! Exact multivariate polynomials over the rationals.
//!
//! Polynomials are sparse term lists over a shared [`Variables`] universe.
//! Monomials are dense exponent vectors indexed by that universe, which keeps
//! comparisons and divisibility tests cheap for the few dozen variables the
//! pipeline ever needs.

mod matrix;
mod monomial;
mod order;
mod polynomial;
mod univariate;
mod variable;

pub use matrix::PolyMatrix;
pub use monomial::Monomial;
pub use order::{BlockScheme, MonomialOrder, TermOrder};
pub use polynomial::{PolyError, Polynomial};
pub use univariate::UnivariatePolynomial;
pub use variable::{VariableId, Variables};

#[cfg(test)]
pub(crate) fn rat(n: i64) -> num_rational::BigRational {
    num_rational::BigRational::from_integer(n.into())
}
