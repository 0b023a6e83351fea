use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;

use super::{Polynomial, Variables};

/// A square matrix with polynomial entries, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    dim: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn zero(vars: &Variables, dim: usize) -> Self {
        PolyMatrix {
            dim,
            entries: (0..dim * dim).map(|_| Polynomial::zero(vars)).collect(),
        }
    }

    pub fn identity(vars: &Variables, dim: usize) -> Self {
        let mut m = Self::zero(vars, dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Polynomial::one(vars);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "matrix must be square");
        PolyMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// A matrix of constants.
    pub fn from_rationals(vars: &Variables, rows: &[Vec<BigRational>]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|c| Polynomial::constant(vars, c.clone())).collect())
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &Polynomial {
        &self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Polynomial] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Polynomial::is_zero)
    }

    pub fn trace(&self) -> Polynomial {
        let mut acc = self.entries[0].clone();
        for i in 1..self.dim {
            acc = &acc + self.get(i, i);
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        PolyMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|e| e.scale(c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Polynomial::zero(self.entries[0].vars());
                for k in 0..n {
                    let (a, b) = (self.get(i, k), other.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        PolyMatrix { dim: n, entries }
    }

    /// `trace(self * other)` without forming the product.
    pub fn trace_of_product(&self, other: &Self) -> Polynomial {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let mut acc = Polynomial::zero(self.entries[0].vars());
        for i in 0..self.dim {
            for k in 0..self.dim {
                let (a, b) = (self.get(i, k), other.get(k, i));
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(a * b);
                }
            }
        }
        acc
    }

    fn zip(&self, other: &Self, f: impl Fn(&Polynomial, &Polynomial) -> Polynomial) -> Self {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        PolyMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.dim {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.dim {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}
