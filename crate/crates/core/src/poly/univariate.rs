use alloc::vec::Vec;
use core::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A dense univariate polynomial, coefficients from the constant term up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariatePolynomial {
    coeffs: Vec<BigRational>,
}

impl UnivariatePolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UnivariatePolynomial { coeffs }
    }

    /// The monic polynomial `y`.
    pub fn identity() -> Self {
        Self::new(alloc::vec![BigRational::zero(), BigRational::one()])
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            Some(lc) => Self::new(self.coeffs.iter().map(|c| c / lc).collect()),
            None => self.clone(),
        }
    }

    pub fn evaluate(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    /// Render with the given variable name.
    pub fn display_in<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        Render(self, var)
    }
}

struct Render<'a>(&'a UnivariatePolynomial, &'a str);

impl fmt::Display for Render<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Render(p, var) = self;
        if p.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in p.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let abs = c.abs();
            if e == 0 {
                write!(f, "{abs}")?;
                continue;
            }
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            f.write_str(var)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for UnivariatePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Render(self, "y").fmt(f)
    }
}
