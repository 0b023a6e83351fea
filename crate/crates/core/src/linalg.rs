//! Exact linear algebra over the rationals: dense matrices with rank and
//! inverse by Gaussian elimination, and an incremental echelon basis for
//! sparse vectors.

use alloc::{collections::BTreeMap, vec, vec::Vec};
use core::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        RationalMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_integers(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn trace(&self) -> BigRational {
        (0..self.rows.min(self.cols)).fold(BigRational::zero(), |acc, i| acc + self.get(i, i))
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && *self == self.transpose()
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right null space.
    pub fn kernel(&self) -> Vec<Vec<BigRational>> {
        let (m, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![BigRational::zero(); self.cols];
                v[f] = BigRational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -m.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<RationalMatrix> {
        assert_eq!(self.rows, self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut aug = Self::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, BigRational::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl fmt::Display for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            f.write_str("[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
            if i + 1 < self.rows {
                f.write_str("\n")?;
            }
        }
        Ok(())
    }
}

pub type SparseVector<K> = BTreeMap<K, BigRational>;

struct EchelonRow<K> {
    pivot: K,
    vector: SparseVector<K>,
    /// Coefficients of this row in terms of the inserted vectors.
    combination: Vec<BigRational>,
}

/// Echelon form of a growing list of linearly independent sparse vectors,
/// able to express any vector in their span.
pub struct SparseEchelon<K> {
    rows: Vec<EchelonRow<K>>,
}

impl<K: Ord + Clone> Default for SparseEchelon<K> {
    fn default() -> Self {
        SparseEchelon { rows: Vec::new() }
    }
}

impl<K: Ord + Clone> SparseEchelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of independent vectors inserted so far.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn reduce(&self, v: &SparseVector<K>) -> (SparseVector<K>, Vec<BigRational>) {
        let mut v = v.clone();
        let mut used = vec![BigRational::zero(); self.rows.len()];
        for row in &self.rows {
            let Some(c) = v.get(&row.pivot).cloned() else {
                continue;
            };
            for (k, x) in &row.vector {
                let e = v.entry(k.clone()).or_insert_with(BigRational::zero);
                *e -= &c * x;
                if e.is_zero() {
                    v.remove(k);
                }
            }
            for (u, t) in used.iter_mut().zip(&row.combination) {
                *u += &c * t;
            }
        }
        (v, used)
    }

    /// Coordinates of `v` in terms of the inserted vectors, if it lies in
    /// their span.
    pub fn coordinates(&self, v: &SparseVector<K>) -> Option<Vec<BigRational>> {
        let (rest, used) = self.reduce(v);
        rest.is_empty().then_some(used)
    }

    /// Insert `v` if it is independent of the current span. Returns
    /// `Ok(index)` for a new vector or `Err(coordinates)` when `v` already
    /// lies in the span.
    pub fn insert(&mut self, v: &SparseVector<K>) -> Result<usize, Vec<BigRational>> {
        let (rest, used) = self.reduce(v);
        if rest.is_empty() {
            return Err(used);
        }
        let index = self.rows.len();
        let (pivot, lead) = rest
            .iter()
            .next_back()
            .map(|(k, c)| (k.clone(), c.clone()))
            .unwrap();
        let inv = lead.recip();
        let vector = rest.into_iter().map(|(k, c)| (k, c * &inv)).collect();
        let mut combination: Vec<BigRational> = used.into_iter().map(|u| -(u * &inv)).collect();
        combination.push(inv);
        for row in &mut self.rows {
            row.combination.push(BigRational::zero());
        }
        self.rows.push(EchelonRow {
            pivot,
            vector,
            combination,
        });
        Ok(index)
    }
}
