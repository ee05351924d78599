//! Exact counts of coset elements having `1` as an eigenvalue.
//!
//! Write `T(g, gamma)` for the number of `A` in `GSp_2g^gamma(F_l)` with
//! `f_A(1) = 0`, and `S(r, gamma)` for the number of elements of
//! `GSp_2r^gamma(F_l)` whose characteristic polynomial is
//! `(x - 1)^r (x - gamma)^r`. Splitting `F_l^{2g}` into the generalized
//! eigenspace attached to `{1, gamma}` and its orthogonal complement gives
//!
//! ```text
//! T(g) = sum_{r + s = g, r >= 1} #Sp_2g / (#Sp_2r #Sp_2s) * S(r) * (#Sp_2s - T(s))
//! ```
//!
//! with `T(0) = 0` and `#Sp_0 = 1`. Everything is evaluated over big
//! integers and every division is checked to be exact.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{Multiplier, PrimeField};
use crate::groups::{field_power, gl_order, sp_order};
use crate::{ratio, BigCount, BigRatio};

fn exact_div(num: &BigUint, den: &BigUint, what: &str) -> Result<BigUint> {
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::inconsistent(format!(
            "{what}: {num} is not divisible by {den}"
        )));
    }
    Ok(q)
}

/// The triple `(g, l, gamma)` indexing a census.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CensusParams {
    pub g: usize,
    pub field: PrimeField,
    pub gamma: Multiplier,
}

impl CensusParams {
    pub fn new(g: usize, ell: u32, gamma: u32) -> Result<Self> {
        if g == 0 {
            return Err(Error::invalid("g must be at least 1"));
        }
        let field = PrimeField::new(ell)?;
        let gamma = Multiplier::new(field, gamma)?;
        Ok(CensusParams { g, field, gamma })
    }

    pub fn ell(&self) -> u32 {
        self.field.modulus()
    }
}

/// `S(r, gamma)`: `l^(2r^2)` for `gamma = 1` (the unipotent elements of
/// `Sp_2r`), otherwise `l^(r^2 - r) #Sp_2r / #GL_r`.
pub fn s_count(r: usize, gamma: Multiplier, field: PrimeField) -> Result<BigCount> {
    if r == 0 {
        return Err(Error::invalid("S(r) needs r >= 1"));
    }
    if gamma.is_one() {
        return Ok(field_power(field, 2 * r * r));
    }
    let num = field_power(field, r * r - r) * sp_order(r, field);
    exact_div(&num, &gl_order(r, field), "S(r, gamma)")
}

/// Memoized evaluation of `T(s, gamma)` for one `(l, gamma)`.
#[derive(Clone, Debug)]
pub struct EigenCounter {
    field: PrimeField,
    gamma: Multiplier,
    sp: Vec<BigCount>,
    s: Vec<BigCount>,
    t: Vec<BigCount>,
}

impl EigenCounter {
    pub fn new(field: PrimeField, gamma: Multiplier) -> Self {
        EigenCounter {
            field,
            gamma,
            sp: vec![BigUint::one()],
            s: vec![BigUint::zero()],
            t: vec![BigUint::zero()],
        }
    }

    fn sp(&mut self, k: usize) -> &BigCount {
        while self.sp.len() <= k {
            let next = sp_order(self.sp.len(), self.field);
            self.sp.push(next);
        }
        &self.sp[k]
    }

    /// `S(r, gamma)` for `r >= 1`, cached.
    pub fn s(&mut self, r: usize) -> Result<BigCount> {
        while self.s.len() <= r {
            let next = s_count(self.s.len(), self.gamma, self.field)?;
            self.s.push(next);
        }
        Ok(self.s[r].clone())
    }

    fn recursion(&mut self, g: usize) -> Result<BigCount> {
        let sp_g = self.sp(g).clone();
        let mut total = BigUint::zero();
        for r in 1..=g {
            let s = g - r;
            let sp_r = self.sp(r).clone();
            let sp_s = self.sp(s).clone();
            let splittings = exact_div(&sp_g, &(&sp_r * &sp_s), "Sp_2g / (Sp_2r Sp_2s)")?;
            let outside = &sp_s - &self.t[s];
            total += splittings * self.s(r)? * outside;
        }
        Ok(total)
    }

    /// `T(g, gamma)`, building every smaller value on the way.
    pub fn t(&mut self, g: usize) -> Result<BigCount> {
        if g == 0 {
            return Err(Error::invalid("T(g) needs g >= 1"));
        }
        while self.t.len() <= g {
            let k = self.t.len();
            let value = self.recursion(k)?;
            if k == 1 {
                let base = self.s(1)?;
                if base != value {
                    return Err(Error::inconsistent(format!(
                        "T(1) = {value} from the recursion but S(1) = {base}"
                    )));
                }
            }
            if &value > self.sp(k) {
                return Err(Error::inconsistent(format!("T({k}) exceeds #Sp_2g")));
            }
            self.t.push(value);
        }
        Ok(self.t[g].clone())
    }
}

/// `T(g, gamma)`, the number of elements of `GSp_2g^gamma(F_l)` with
/// eigenvalue one.
pub fn t_count(g: usize, gamma: Multiplier, field: PrimeField) -> Result<BigCount> {
    EigenCounter::new(field, gamma).t(g)
}

/// `T(g, gamma) / #Sp_2g(F_l)` in lowest terms.
pub fn eigen_proportion(g: usize, gamma: Multiplier, field: PrimeField) -> Result<BigRatio> {
    let t = t_count(g, gamma, field)?;
    Ok(ratio(&t, &sp_order(g, field)))
}

/// Leading-order eigenvalue-one proportion: `1/(l-1)` for `gamma != 1`,
/// `l/(l^2-1)` for `gamma = 1`. It does not depend on `g`.
pub fn tau(gamma: Multiplier, field: PrimeField) -> BigRatio {
    let l = BigUint::from(field.modulus());
    if gamma.is_one() {
        ratio(&l, &(&l * &l - 1u32))
    } else {
        ratio(&BigUint::one(), &(l - 1u32))
    }
}

/// `|T/#Sp - tau| / tau^3`, the smallest constant `c` for which
/// `|T/#Sp - tau| <= c tau^3` holds at this `(g, gamma, l)`.
pub fn eigenone_deviation(g: usize, gamma: Multiplier, field: PrimeField) -> Result<BigRatio> {
    let p = eigen_proportion(g, gamma, field)?;
    let t = tau(gamma, field);
    let cube = &t * &t * &t;
    Ok((p - t).abs() / cube)
}

/// Bounds on `#W / #Sp_2g` implied by a count of `psi_count` admissible
/// characteristic polynomials out of `#Xi = l^g`:
/// `(l/(l+1))^(2g^2+g) psi/l^g <= #W/#Sp <= (l/(l-1))^(2g^2+g) psi/l^g`.
pub fn psitow_bounds(
    psi_count: &BigCount,
    g: usize,
    field: PrimeField,
) -> Result<(BigRatio, BigRatio)> {
    let xi = field_power(field, g);
    if psi_count > &xi {
        return Err(Error::invalid(format!(
            "psi count {psi_count} exceeds l^g = {xi}"
        )));
    }
    if g == 0 {
        return Err(Error::invalid("g must be at least 1"));
    }
    let l = field.modulus();
    let e = (2 * g * g + g) as u32;
    let base = ratio(psi_count, &xi);
    let lp = BigUint::from(l).pow(e);
    let lower = &base * ratio(&lp, &BigUint::from(l + 1).pow(e));
    let upper = &base * ratio(&lp, &BigUint::from(l - 1).pow(e));
    Ok((lower, upper))
}

/// `l/(l^2-1)`: limiting proportion of principally polarized abelian
/// varieties with a rational point of order `l` over fields of size
/// `1 mod l`, to leading order. Equal to `tau(1, l)`.
pub fn abvar_leading(field: PrimeField) -> BigRatio {
    tau(Multiplier::ONE, field)
}

/// Everything the eigenvalue-one census knows about one parameter triple.
#[derive(Clone, Debug, PartialEq)]
pub struct EigenCensus {
    pub params: CensusParams,
    /// `S(r, gamma)` for `r = 1..=g`.
    pub s_values: Vec<BigCount>,
    pub t_value: BigCount,
    pub proportion: BigRatio,
    pub tau: BigRatio,
    pub deviation: BigRatio,
}

pub fn eigen_census(params: CensusParams) -> Result<EigenCensus> {
    let CensusParams { g, field, gamma } = params;
    let mut counter = EigenCounter::new(field, gamma);
    let s_values = (1..=g).map(|r| counter.s(r)).collect::<Result<Vec<_>>>()?;
    let t_value = counter.t(g)?;
    let proportion = ratio(&t_value, &sp_order(g, field));
    let tau = tau(gamma, field);
    let cube = &tau * &tau * &tau;
    let deviation = (&proportion - &tau).abs() / cube;
    Ok(EigenCensus {
        params,
        s_values,
        t_value,
        proportion,
        tau,
        deviation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn field(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn gam(f: PrimeField, v: u32) -> Multiplier {
        Multiplier::new(f, v).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRatio {
        BigRatio::new(BigInt::from(n), BigInt::from(d))
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn s_examples() {
        let f3 = field(3);
        assert_eq!(s_count(1, gam(f3, 1), f3).unwrap(), big(9));
        assert_eq!(s_count(1, gam(f3, 2), f3).unwrap(), big(12));
        assert_eq!(s_count(2, gam(f3, 2), f3).unwrap(), big(9720));
        assert!(s_count(0, gam(f3, 2), f3).is_err());
    }

    #[test]
    fn t_examples() {
        let f3 = field(3);
        assert_eq!(t_count(1, gam(f3, 2), f3).unwrap(), big(12));
        assert_eq!(t_count(1, gam(f3, 1), f3).unwrap(), big(9));
        assert_eq!(t_count(2, gam(f3, 2), f3).unwrap(), big(22_680));
        assert!(t_count(0, gam(f3, 2), f3).is_err());
    }

    #[test]
    fn proportion_examples() {
        let f3 = field(3);
        assert_eq!(eigen_proportion(2, gam(f3, 2), f3).unwrap(), q(7, 16));
        assert_eq!(eigen_proportion(1, gam(f3, 2), f3).unwrap(), q(1, 2));
        assert_eq!(eigen_proportion(1, gam(f3, 1), f3).unwrap(), q(3, 8));
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(gam(field(3), 2), field(3)), q(1, 2));
        assert_eq!(tau(Multiplier::ONE, field(3)), q(3, 8));
        assert_eq!(tau(Multiplier::ONE, field(5)), q(5, 24));
    }

    #[test]
    fn deviation_examples() {
        for p in [3u32, 5, 7, 11, 13] {
            let f = field(p);
            for gamma in Multiplier::all(f).filter(|g| !g.is_one()) {
                assert!(eigenone_deviation(1, gamma, f).unwrap().is_zero());
            }
        }
        assert_eq!(
            eigenone_deviation(2, gam(field(3), 2), field(3)).unwrap(),
            q(1, 2)
        );
        assert_eq!(
            eigenone_deviation(2, gam(field(5), 2), field(5)).unwrap(),
            q(2, 3)
        );
    }

    #[test]
    fn psitow_examples() {
        let f3 = field(3);
        assert_eq!(psitow_bounds(&big(1), 1, f3).unwrap(), (q(9, 64), q(9, 8)));
        assert_eq!(
            psitow_bounds(&big(0), 2, field(5)).unwrap(),
            (q(0, 1), q(0, 1))
        );
        assert_eq!(
            psitow_bounds(&big(3), 1, f3).unwrap(),
            (q(27, 64), q(27, 8))
        );
        assert!(psitow_bounds(&big(4), 1, f3).is_err());
    }

    #[test]
    fn abvar_examples() {
        assert_eq!(abvar_leading(field(3)), q(3, 8));
        assert_eq!(abvar_leading(field(5)), q(5, 24));
        assert_eq!(abvar_leading(field(2)), q(2, 3));
    }

    #[test]
    fn genus_two_closed_form() {
        for p in [3i64, 5, 7, 11, 13, 17, 19, 23] {
            let f = field(p as u32);
            let want = q(p * p - 2, (p - 1) * (p - 1) * (p + 1));
            for gamma in Multiplier::all(f).filter(|g| !g.is_one()) {
                assert_eq!(eigen_proportion(2, gamma, f).unwrap(), want);
            }
        }
    }

    #[test]
    fn nontrivial_multipliers_agree() {
        for p in [5u32, 7, 11] {
            let f = field(p);
            for g in 1..=4 {
                let t2 = t_count(g, gam(f, 2), f).unwrap();
                for gamma in Multiplier::all(f).filter(|g| !g.is_one()) {
                    assert_eq!(t_count(g, gamma, f).unwrap(), t2);
                }
            }
        }
    }

    #[test]
    fn proportion_stays_in_unit_interval() {
        for p in [2u32, 3, 5, 31] {
            let f = field(p);
            for gamma in Multiplier::all(f).take(3) {
                for g in 1..=6 {
                    let c = eigen_census(CensusParams { g, field: f, gamma }).unwrap();
                    assert!(c.t_value <= sp_order(g, f));
                    assert!(c.proportion >= q(0, 1) && c.proportion <= q(1, 1));
                    assert!((&c.proportion - &c.tau).abs() <= q(1, 1));
                    assert_eq!(c.s_values.len(), g);
                }
            }
        }
    }

    #[test]
    fn params_validation() {
        assert!(CensusParams::new(0, 3, 1).is_err());
        assert!(CensusParams::new(1, 4, 1).is_err());
        assert!(CensusParams::new(1, 3, 0).is_err());
        assert!(CensusParams::new(1, 3, 3).is_err());
        assert!(CensusParams::new(2, 3, 2).is_ok());
    }
}
