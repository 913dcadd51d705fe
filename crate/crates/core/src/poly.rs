//! Dense integer polynomials with exact division.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::ExactInt;
use crate::error::{invalid, Error, Result};

/// Coefficient `i` multiplies `x^i`. Trailing zeros are always trimmed, so
/// the zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<ExactInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ExactInt::one())
    }

    pub fn constant(c: ExactInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^e`.
    pub fn monomial(c: ExactInt, e: usize) -> Self {
        let mut coeffs = vec![ExactInt::zero(); e + 1];
        coeffs[e] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<ExactInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| ExactInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[ExactInt] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the stored range.
    pub fn coeff(&self, i: usize) -> ExactInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![ExactInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::from_coeffs(out)
    }

    pub fn pow(&self, mut e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn scale(&self, c: &ExactInt) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Quotient `s` with `self = divisor * s`, failing on any remainder.
    pub fn divide_exact(&self, divisor: &Self) -> Result<Self> {
        let lead = divisor.coeffs.last().ok_or_else(|| invalid("division by the zero polynomial"))?;
        let dd = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return if self.is_zero() { Ok(Self::zero()) } else { Err(non_exact(self, divisor)) };
        }
        let mut quot = vec![ExactInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return Err(non_exact(self, divisor));
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * b;
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(non_exact(self, divisor));
        }
        Ok(Self::from_coeffs(quot))
    }

    /// Divide every coefficient by `n`, failing unless all are multiples.
    pub fn scale_exact(&self, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(invalid("scale_exact requires n >= 1"));
        }
        let n_big = ExactInt::from(n);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(&n_big);
            if !r.is_zero() {
                return Err(Error::NonExactDivision(format!(
                    "coefficient {c} of {self} is not divisible by {n}"
                )));
            }
            out.push(q);
        }
        Ok(Self::from_coeffs(out))
    }

    /// Sum of coefficients, i.e. the value at x = 1.
    pub fn eval_at_one(&self) -> ExactInt {
        self.coeffs.iter().sum()
    }
}

fn non_exact(p: &IntPolynomial, q: &IntPolynomial) -> Error {
    Error::NonExactDivision(format!("({p}) is not divisible by ({q})"))
}

pub fn poly_mul(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    a.mul(b)
}

pub fn poly_divide_exact(p: &IntPolynomial, q: &IntPolynomial) -> Result<IntPolynomial> {
    p.divide_exact(q)
}

pub fn poly_scale_exact(p: &IntPolynomial, n: usize) -> Result<IntPolynomial> {
    p.scale_exact(n)
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: Self) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: Self) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::from_coeffs((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: Self) -> IntPolynomial {
        IntPolynomial::mul(self, rhs)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &ExactInt::zero();
            let mag = if neg { -c } else { c.clone() };
            match (first, neg) {
                (true, true) => f.write_str("-")?,
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
                (true, false) => {}
            }
            first = false;
            let show_mag = i == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}
