//! Dense univariate polynomials over `F_p`, lowest degree first.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElem, PrimeField};

/// A polynomial with coefficients in `field`. Trailing zero coefficients are
/// always trimmed, so the zero polynomial has an empty coefficient vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    field: PrimeField,
    coeffs: Vec<FieldElem>,
}

impl Poly {
    pub fn new(field: PrimeField, mut coeffs: Vec<FieldElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    /// Builds a polynomial from signed integer coefficients, lowest degree first.
    pub fn from_ints(field: PrimeField, coeffs: &[i64]) -> Self {
        Poly::new(field, coeffs.iter().map(|&c| field.elem(c)).collect())
    }

    pub fn zero(field: PrimeField) -> Self {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: PrimeField) -> Self {
        Poly {
            field,
            coeffs: vec![FieldElem::ONE],
        }
    }

    /// `x - a`
    pub fn linear(field: PrimeField, a: FieldElem) -> Self {
        Poly {
            field,
            coeffs: vec![field.neg(a), FieldElem::ONE],
        }
    }

    /// `(x - a)^m`
    pub fn linear_power(field: PrimeField, a: FieldElem, m: usize) -> Self {
        let lin = Poly::linear(field, a);
        (0..m).fold(Poly::one(field), |acc, _| acc.mul(&lin))
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    /// Coefficient of `x^i`; zero beyond the degree.
    #[inline]
    pub fn coeff(&self, i: usize) -> FieldElem {
        self.coeffs.get(i).copied().unwrap_or(FieldElem::ZERO)
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    #[inline]
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<FieldElem> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(FieldElem::ONE)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: FieldElem) -> FieldElem {
        let f = self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(FieldElem::ZERO, |acc, &c| f.mul_add(acc, x, c))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        let f = self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(f.elem(i as i64), c))
            .collect();
        Poly::new(f, coeffs)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            f,
            (0..n)
                .map(|i| f.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            f,
            (0..n)
                .map(|i| f.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let f = self.field;
        let mut out = vec![FieldElem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.mul_add(a, b, out[i + j]);
            }
        }
        Poly::new(f, out)
    }

    pub fn scale(&self, c: FieldElem) -> Poly {
        let f = self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Divides through by the leading coefficient.
    pub fn monic(&self) -> Result<Poly> {
        let lead = self.leading().ok_or(Error::ZeroPolynomial)?;
        Ok(self.scale(self.field.inv(lead)?))
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let f = self.field;
        let dlead = divisor.leading().ok_or(Error::ZeroPolynomial)?;
        let dinv = f.inv(dlead)?;
        let dn = divisor.coeffs.len();
        let mut rem = self.coeffs.clone();
        if rem.len() < dn {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![FieldElem::ZERO; rem.len() - dn + 1];
        for k in (0..quot.len()).rev() {
            let c = f.mul(rem[k + dn - 1], dinv);
            quot[k] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = f.sub(rem[k + j], f.mul(c, d));
            }
        }
        rem.truncate(dn - 1);
        Ok((Poly::new(f, quot), Poly::new(f, rem)))
    }

    /// Synthetic division by `x - a`, returning the quotient and `self(a)`.
    pub fn divide_by_linear(&self, a: FieldElem) -> (Poly, FieldElem) {
        let f = self.field;
        if self.coeffs.len() <= 1 {
            return (Poly::zero(f), self.coeff(0));
        }
        let n = self.coeffs.len();
        let mut quot = vec![FieldElem::ZERO; n - 1];
        let mut carry = FieldElem::ZERO;
        for i in (1..n).rev() {
            carry = f.mul_add(carry, a, self.coeffs[i]);
            quot[i - 1] = carry;
        }
        let rem = f.mul_add(carry, a, self.coeffs[0]);
        (Poly::new(f, quot), rem)
    }

    /// Largest `m` such that `(x - a)^m` divides `self`, found by repeated
    /// exact division. Derivative tests are avoided because they fail once
    /// the multiplicity reaches the characteristic.
    pub fn root_multiplicity(&self, a: FieldElem) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut m = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divide_by_linear(a);
            if !r.is_zero() {
                return Ok(m);
            }
            m += 1;
            cur = q;
        }
    }

    /// Strips every factor `x - a` and returns what remains.
    pub fn remove_root(&self, a: FieldElem) -> Poly {
        let mut cur = self.clone();
        while cur.degree().is_some_and(|d| d > 0) {
            let (q, r) = cur.divide_by_linear(a);
            if !r.is_zero() {
                break;
            }
            cur = q;
        }
        cur
    }

    /// Monic greatest common divisor. Fails only when both inputs are zero.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `x^deg * f(1/x)` scaled to be monic. For `f(0) != 0` its roots are
    /// the inverses of the roots of `f`.
    pub fn reciprocal(&self) -> Result<Poly> {
        let mut rev = self.coeffs.clone();
        rev.reverse();
        Poly::new(self.field, rev).monic()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let show_coeff = c.value() != 1 || i == 0;
            if show_coeff {
                write!(f, "{c}")?;
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
