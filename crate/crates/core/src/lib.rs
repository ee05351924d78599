//! Exact and sampled census of characteristic polynomials in the symplectic
//! similitude groups `GSp_2g(F_l)`.
//!
//! The crate is `no_std` (it needs `alloc`). Everything here is a pure
//! function of its inputs; the `gsp-census` crate layers threads, file
//! formats and the command line on top.
//!
//! Module map:
//!
//! * [`field`], [`poly`], [`matrix`], [`groups`]: arithmetic over `F_l`,
//!   polynomials, `2g x 2g` matrices with the standard alternating form, and
//!   classical group orders.
//! * [`census`]: closed-form and recursive counts of elements with
//!   eigenvalue one, evaluated in exact rational arithmetic.
//! * [`xi`]: the affine space of admissible characteristic polynomials and
//!   the properties (E), (N) and (R) on it.
//! * [`brute`]: exhaustive enumeration of cosets, exact uniform sampling and
//!   sharded Monte Carlo estimation.
//! * [`curves`]: point counts of short Weierstrass curves and Frobenius
//!   statistics modulo `l`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod brute;
pub mod census;
pub mod curves;
mod error;
pub mod field;
pub mod groups;
pub mod matrix;
pub mod poly;
pub mod xi;

pub use error::{Error, Result};
pub use field::{FieldElem, Multiplier, PrimeField};
pub use matrix::SpMatrix;
pub use poly::Poly;
pub use xi::PropertyTag;

/// Arbitrary precision nonnegative count.
pub type BigCount = num_bigint::BigUint;

/// Exact rational number, always stored in lowest terms with a positive
/// denominator.
pub type BigRatio = num_rational::BigRational;

/// Builds the reduced ratio `num / den` of two counts.
///
/// Panics if `den` is zero.
pub fn ratio(num: &BigCount, den: &BigCount) -> BigRatio {
    BigRatio::new(num.clone().into(), den.clone().into())
}
