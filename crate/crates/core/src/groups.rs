//! Orders of the finite classical groups used by the census.

use num_bigint::BigUint;
use num_traits::One;

use crate::field::PrimeField;
use crate::BigCount;

fn big_pow(l: u32, e: usize) -> BigUint {
    BigUint::from(l).pow(e as u32)
}

/// `#Sp_2g(F_l) = l^(g^2) * prod_{j=1..g} (l^(2j) - 1)`; `1` for `g = 0`.
pub fn sp_order(g: usize, field: PrimeField) -> BigCount {
    let l = field.modulus();
    (1..=g).fold(big_pow(l, g * g), |acc, j| acc * (big_pow(l, 2 * j) - 1u32))
}

/// `#GL_r(F_l) = prod_{j=0..r-1} (l^r - l^j)`; `1` for `r = 0`.
pub fn gl_order(r: usize, field: PrimeField) -> BigCount {
    let l = field.modulus();
    let top = big_pow(l, r);
    (0..r).fold(BigUint::one(), |acc, j| acc * (&top - big_pow(l, j)))
}

/// `#GSp_2g(F_l) = (l - 1) #Sp_2g(F_l)`.
pub fn gsp_order(g: usize, field: PrimeField) -> BigCount {
    sp_order(g, field) * (field.modulus() - 1)
}

/// `l^e` as a big integer.
pub fn field_power(field: PrimeField, e: usize) -> BigCount {
    big_pow(field.modulus(), e)
}
