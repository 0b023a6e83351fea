use smallvec::SmallVec;

use super::Variables;

/// A power product as a dense exponent vector over a [`Variables`] set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u16; 12]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn variable(nvars: usize, index: usize, exponent: u16) -> Self {
        let mut m = Monomial::one(nvars);
        m.0[index] = exponent;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponent(&self, index: usize) -> u16 {
        self.0[index]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0
            .iter()
            .zip(other.0.iter())
            .all(|(&a, &b)| a == 0 || b == 0)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(&a, &b)| a.max(b))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(&a, &b)| a + b)
                .collect(),
        )
    }

    /// `self / other`, provided `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(&a, &b)| a - b)
                .collect(),
        ))
    }

    pub fn involves(&self, index: usize) -> bool {
        self.0[index] != 0
    }

    /// Re-index into a different variable set. Returns `None` when a variable
    /// with a nonzero exponent is missing from `to`.
    pub fn remap(&self, from: &Variables, to: &Variables) -> Option<Monomial> {
        let mut out = Monomial::one(to.len());
        for (i, &e) in self.0.iter().enumerate() {
            if e != 0 {
                out.0[to.index_of(from.get(i))?] = e;
            }
        }
        Some(out)
    }
}
