//! Finiteness test and exact count for the equivalence classes of
//! `n`-dimensional irreducible representations of a finitely presented
//! associative algebra over the rationals.
//!
//! The pipeline works entirely inside the commutative polynomial ring `B`
//! whose variables are the entries of `s` generic `n x n` matrices:
//!
//! 1. [`genmat`] builds the generic matrices, the relation ideal, the trace
//!    generators and the irreducibility polynomials.
//! 2. [`decide`] saturates the relation ideal by the irreducibility
//!    polynomials and checks every trace generator for algebraicity.
//! 3. [`count`] realises the trace algebra as a finite-dimensional algebra
//!    and reads the number of classes off the rank of its trace form.
//!
//! The crate is `no_std` and only needs `alloc`; wall-clock limits are
//! supplied through the [`budget::Clock`] trait by the caller.

#![no_std]

extern crate alloc;

pub mod budget;
pub mod count;
pub mod decide;
pub mod genmat;
pub mod groebner;
pub mod linalg;
pub mod poly;
pub mod presentation;

#[cfg(test)]
mod testutil;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
