//! Prime fields `F_p` with the modulus chosen at runtime.

use core::fmt;

use crate::error::{Error, Result};

/// A residue in `[0, p)`. The modulus lives in the [`PrimeField`] that
/// produced the value.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(transparent)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    #[inline]
    pub const fn value(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// The field `F_p`. Cheap to copy; primality is checked once in [`PrimeField::new`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeField {
    p: u32,
}

/// Largest modulus accepted. Keeps `a + b` inside `u32` and products inside `u64`.
pub const MAX_MODULUS: u32 = 1 << 31;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p >= MAX_MODULUS || !is_prime(u64::from(p)) {
            return Err(Error::NotPrime(u64::from(p)));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub const fn modulus(self) -> u32 {
        self.p
    }

    /// Reduces an arbitrary signed integer into the field.
    #[inline]
    pub fn elem(self, v: i64) -> FieldElem {
        FieldElem(v.rem_euclid(i64::from(self.p)) as u32)
    }

    /// Wraps a value that must already be canonical.
    #[inline]
    pub fn from_canonical(self, v: u32) -> FieldElem {
        debug_assert!(v < self.p, "{v} is not reduced mod {}", self.p);
        FieldElem(v)
    }

    #[inline]
    pub fn add(self, a: FieldElem, b: FieldElem) -> FieldElem {
        let s = a.0 + b.0;
        FieldElem(if s >= self.p { s - self.p } else { s })
    }

    #[inline]
    pub fn sub(self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(if a.0 >= b.0 {
            a.0 - b.0
        } else {
            a.0 + self.p - b.0
        })
    }

    #[inline]
    pub fn neg(self, a: FieldElem) -> FieldElem {
        FieldElem(if a.0 == 0 { 0 } else { self.p - a.0 })
    }

    #[inline]
    pub fn mul(self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem((u64::from(a.0) * u64::from(b.0) % u64::from(self.p)) as u32)
    }

    /// `a * b + c`
    #[inline]
    pub fn mul_add(self, a: FieldElem, b: FieldElem, c: FieldElem) -> FieldElem {
        FieldElem(((u64::from(a.0) * u64::from(b.0) + u64::from(c.0)) % u64::from(self.p)) as u32)
    }

    pub fn pow(self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut base = a;
        let mut acc = FieldElem::ONE;
        if self.p == 1 {
            return FieldElem::ZERO;
        }
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let (mut r0, mut r1) = (i64::from(self.p), i64::from(a.0));
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Ok(self.elem(t0))
    }

    pub fn div(self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// All residues `0, 1, ..., p - 1` in increasing order.
    pub fn elements(self) -> impl Iterator<Item = FieldElem> + Clone {
        (0..self.p).map(FieldElem)
    }

    /// The nonzero residues `1, ..., p - 1`.
    pub fn units(self) -> impl Iterator<Item = FieldElem> + Clone {
        (1..self.p).map(FieldElem)
    }
}

/// A nonzero scalar used as the multiplier of a symplectic similitude.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multiplier(FieldElem);

impl Multiplier {
    pub fn new(field: PrimeField, value: u32) -> Result<Self> {
        if value == 0 || value >= field.modulus() {
            return Err(Error::ZeroMultiplier(value));
        }
        Ok(Multiplier(FieldElem(value)))
    }

    pub fn from_elem(gamma: FieldElem) -> Result<Self> {
        if gamma.is_zero() {
            return Err(Error::ZeroMultiplier(0));
        }
        Ok(Multiplier(gamma))
    }

    pub const ONE: Multiplier = Multiplier(FieldElem::ONE);

    #[inline]
    pub const fn elem(self) -> FieldElem {
        self.0
    }

    #[inline]
    pub const fn value(self) -> u32 {
        self.0 .0
    }

    #[inline]
    pub const fn is_one(self) -> bool {
        self.0 .0 == 1
    }

    /// Every multiplier of `F_p^x`, in increasing order.
    pub fn all(field: PrimeField) -> impl Iterator<Item = Multiplier> {
        field.units().map(Multiplier)
    }
}

impl fmt::Display for Multiplier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}
