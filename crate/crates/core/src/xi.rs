//! The space of characteristic polynomials of a coset `GSp_2g^gamma`.
//!
//! A characteristic polynomial `f = sum c_i x^i` of a multiplier-`gamma`
//! similitude is monic of degree `2g` and satisfies
//! `c_i = gamma^(g-i) c_{2g-i}` for `0 <= i <= g`, because its roots pair up
//! as `(lambda, gamma/lambda)`. It is therefore fixed by the `g` free
//! coefficients `c_{2g-1}, ..., c_g`, and the space is a copy of `F_l^g`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::{FieldElem, Multiplier, PrimeField};
use crate::groups::{field_power, sp_order};
use crate::poly::Poly;
use crate::{ratio, BigCount, BigRatio};

/// A point of the coefficient space: the free coefficients
/// `[c_{2g-1}, ..., c_g]` of a monic degree-`2g` polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct XiPoint {
    pub field: PrimeField,
    pub gamma: Multiplier,
    pub free_coeffs: Vec<FieldElem>,
}

impl XiPoint {
    pub fn g(&self) -> usize {
        self.free_coeffs.len()
    }

    /// The monic polynomial determined by the free coefficients.
    pub fn expand(&self) -> Poly {
        let f = self.field;
        let g = self.g();
        let mut c = vec![FieldElem::ZERO; 2 * g + 1];
        c[2 * g] = FieldElem::ONE;
        for (k, &v) in self.free_coeffs.iter().enumerate() {
            c[2 * g - 1 - k] = v;
        }
        let mut gpow = FieldElem::ONE;
        for i in (0..g).rev() {
            gpow = f.mul(gpow, self.gamma.elem());
            c[i] = f.mul(gpow, c[2 * g - i]);
        }
        Poly::new(f, c)
    }

    /// Inverse of [`XiPoint::expand`]. `None` unless `poly` is monic of
    /// degree `2g` and satisfies the coefficient relation.
    pub fn from_poly(poly: &Poly, gamma: Multiplier) -> Option<XiPoint> {
        let d = poly.degree()?;
        if d % 2 != 0 || !poly.is_monic() {
            return None;
        }
        let g = d / 2;
        let point = XiPoint {
            field: poly.field(),
            gamma,
            free_coeffs: (0..g).map(|k| poly.coeff(2 * g - 1 - k)).collect(),
        };
        (point.expand() == *poly).then_some(point)
    }
}

/// Whether `poly` satisfies the functional equation for multiplier `gamma`.
pub fn satisfies_functional_equation(poly: &Poly, gamma: Multiplier) -> bool {
    XiPoint::from_poly(poly, gamma).is_some()
}

/// Iterator over the `l^g` polynomials of the space, in lexicographic order
/// of the free coefficients (`c_{2g-1}` most significant).
#[derive(Clone, Debug)]
pub struct XiEnumerator {
    field: PrimeField,
    gamma: Multiplier,
    first: Option<FieldElem>,
    digits: Vec<u32>,
    done: bool,
}

impl Iterator for XiEnumerator {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        if self.done {
            return None;
        }
        let f = self.field;
        let free_coeffs = self
            .first
            .into_iter()
            .chain(self.digits.iter().map(|&d| f.from_canonical(d)))
            .collect();
        self.done = true;
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < f.modulus() {
                self.done = false;
                break;
            }
            *d = 0;
        }
        Some(
            XiPoint {
                field: f,
                gamma: self.gamma,
                free_coeffs,
            }
            .expand(),
        )
    }
}

pub fn xi_enumerate(g: usize, gamma: Multiplier, field: PrimeField) -> XiEnumerator {
    XiEnumerator {
        field,
        gamma,
        first: None,
        digits: vec![0; g],
        done: false,
    }
}

/// The `l^(g-1)` polynomials whose leading free coefficient `c_{2g-1}` is
/// `first`; the `l` slices partition the space. Needs `g >= 1`.
pub fn xi_enumerate_slice(
    g: usize,
    gamma: Multiplier,
    field: PrimeField,
    first: FieldElem,
) -> XiEnumerator {
    assert!(g >= 1, "slices need g >= 1");
    XiEnumerator {
        field,
        gamma,
        first: Some(first),
        digits: vec![0; g - 1],
        done: false,
    }
}

/// Properties of a characteristic polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PropertyTag {
    /// `1` is a root.
    E,
    /// `1` is not a root.
    N,
    /// No two distinct roots have product `1`, `-1` has multiplicity at most
    /// one and `1` multiplicity at most two.
    RLiteral,
    /// `f(x)` and `f(1/x)` share no root, `f(-1)` or `f'(-1)` is nonzero,
    /// and one of `f(1)`, `f'(1)`, `f''(1)` is nonzero.
    RProof,
}

impl PropertyTag {
    pub const ALL: [PropertyTag; 4] = [
        PropertyTag::E,
        PropertyTag::N,
        PropertyTag::RLiteral,
        PropertyTag::RProof,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PropertyTag::E => "E",
            PropertyTag::N => "N",
            PropertyTag::RLiteral => "R",
            PropertyTag::RProof => "Rproof",
        }
    }
}

impl fmt::Display for PropertyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PropertyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "E" | "e" | "eigen1" => Ok(PropertyTag::E),
            "N" | "n" => Ok(PropertyTag::N),
            "R" | "r" | "Rliteral" | "R_literal" => Ok(PropertyTag::RLiteral),
            "Rproof" | "rproof" | "R_proof" => Ok(PropertyTag::RProof),
            other => Err(Error::invalid(format!("unknown property tag {other:?}"))),
        }
    }
}

fn r_literal(f: &Poly) -> bool {
    let field = f.field();
    let one = FieldElem::ONE;
    let minus_one = field.neg(one);
    debug_assert!(
        !f.coeff(0).is_zero(),
        "constant term of a similitude charpoly is gamma^g"
    );
    if f.root_multiplicity(minus_one).unwrap_or(0) > 1 || f.root_multiplicity(one).unwrap_or(0) > 2
    {
        return false;
    }
    // A common root of f(x) and f(1/x) other than +-1 is a pair of distinct
    // roots with product 1.
    let Ok(rev) = f.reciprocal() else {
        return false;
    };
    let Ok(common) = f.gcd(&rev) else {
        return false;
    };
    let rest = common.remove_root(one).remove_root(minus_one);
    rest.degree() == Some(0)
}

fn r_proof(f: &Poly) -> bool {
    let field = f.field();
    let one = FieldElem::ONE;
    let minus_one = field.neg(one);
    let Ok(rev) = f.reciprocal() else {
        return false;
    };
    let Ok(common) = f.gcd(&rev) else {
        return false;
    };
    if common.degree() != Some(0) {
        return false;
    }
    let d1 = f.derivative();
    let d2 = d1.derivative();
    let at_minus_one = !f.eval(minus_one).is_zero() || !d1.eval(minus_one).is_zero();
    let at_one = !f.eval(one).is_zero() || !d1.eval(one).is_zero() || !d2.eval(one).is_zero();
    at_minus_one && at_one
}

/// The predicate exactly as stated, without reference to the coset.
pub fn has_property_raw(f: &Poly, tag: PropertyTag) -> bool {
    match tag {
        PropertyTag::E => f.eval(FieldElem::ONE).is_zero(),
        PropertyTag::N => !f.eval(FieldElem::ONE).is_zero(),
        PropertyTag::RLiteral => r_literal(f),
        PropertyTag::RProof => r_proof(f),
    }
}

/// The predicate used for all counts. It agrees with [`has_property_raw`]
/// except that nothing in the multiplier-one coset counts as (R), so that
/// `W^1_(R)` is empty.
pub fn has_property(f: &Poly, gamma: Multiplier, tag: PropertyTag) -> bool {
    if gamma.is_one() && matches!(tag, PropertyTag::RLiteral | PropertyTag::RProof) {
        return false;
    }
    has_property_raw(f, tag)
}

/// How to evaluate (R) in the multiplier-one coset.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GammaOnePolicy {
    /// `W^1_(R)` is empty; the headline convention.
    #[default]
    Empty,
    /// Evaluate the literal condition anyway (diagnostic).
    Raw,
}

pub fn property_holds(
    f: &Poly,
    gamma: Multiplier,
    tag: PropertyTag,
    policy: GammaOnePolicy,
) -> bool {
    match policy {
        GammaOnePolicy::Empty => has_property(f, gamma, tag),
        GammaOnePolicy::Raw => has_property_raw(f, tag),
    }
}

/// `#Psi^gamma_tag`: the number of polynomials in the space with the property.
pub fn psi_count(g: usize, gamma: Multiplier, field: PrimeField, tag: PropertyTag) -> BigCount {
    psi_count_with(g, gamma, field, tag, GammaOnePolicy::Empty)
}

pub fn psi_count_with(
    g: usize,
    gamma: Multiplier,
    field: PrimeField,
    tag: PropertyTag,
    policy: GammaOnePolicy,
) -> BigCount {
    let n = xi_enumerate(g, gamma, field)
        .filter(|f| property_holds(f, gamma, tag, policy))
        .count();
    BigUint::from(n)
}

/// `(l^g - #Psi_(R)) / l^(g-1)`: the smallest `C` with
/// `#Psi_(R) >= l^g - C l^(g-1)` at this `(g, gamma, l)`.
pub fn eigenweird_constant(g: usize, gamma: Multiplier, field: PrimeField) -> Result<BigRatio> {
    if gamma.is_one() {
        return Err(Error::invalid("the (R) lower bound needs gamma != 1"));
    }
    if g == 0 {
        return Err(Error::invalid("g must be at least 1"));
    }
    let psi = psi_count(g, gamma, field, PropertyTag::RLiteral);
    let total = field_power(field, g);
    Ok(ratio(&(total - psi), &field_power(field, g - 1)))
}

/// `(l^g - #Psi_(N or R)) / l^(g-2)`: the constant in the statement that the
/// complement of (N) or (R) has codimension two. Needs `g >= 2`.
pub fn codim_two_constant(g: usize, gamma: Multiplier, field: PrimeField) -> Result<BigRatio> {
    if g < 2 {
        return Err(Error::invalid("codimension-two count needs g >= 2"));
    }
    let good = xi_enumerate(g, gamma, field)
        .filter(|f| {
            has_property(f, gamma, PropertyTag::N) || has_property(f, gamma, PropertyTag::RLiteral)
        })
        .count();
    let total = field_power(field, g);
    Ok(ratio(
        &(total - BigUint::from(good)),
        &field_power(field, g - 2),
    ))
}

/// Bounds valid for the number `Delta(f)` of coset elements with any given
/// characteristic polynomial `f`:
/// `l^(2g^2) #Sp_2g / (l+1)^(2g^2+g) <= Delta(f) <= l^(2g^2) #Sp_2g / (l-1)^(2g^2+g)`.
pub fn delta_bounds(g: usize, field: PrimeField) -> Result<(BigRatio, BigRatio)> {
    if g == 0 {
        return Err(Error::invalid("g must be at least 1"));
    }
    let l = field.modulus();
    let e = (2 * g * g + g) as u32;
    let top = field_power(field, 2 * g * g) * sp_order(g, field);
    let lower = ratio(&top, &BigUint::from(l + 1).pow(e));
    let upper = if l == 2 {
        // (l - 1)^e = 1
        ratio(&top, &BigUint::from(1u32))
    } else {
        ratio(&top, &BigUint::from(l - 1).pow(e))
    };
    debug_assert!(!upper.is_zero());
    Ok((lower, upper))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeSet;
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

    fn point(f: PrimeField, gamma: u32, free: &[i64]) -> XiPoint {
        XiPoint {
            field: f,
            gamma: gam(f, gamma),
            free_coeffs: free.iter().map(|&c| f.elem(c)).collect(),
        }
    }

    #[test]
    fn expand_examples() {
        let f3 = field(3);
        assert_eq!(point(f3, 2, &[1]).expand(), Poly::from_ints(f3, &[2, 1, 1]));
        assert_eq!(
            point(f3, 1, &[-2]).expand(),
            Poly::linear_power(f3, FieldElem::ONE, 2)
        );
        assert_eq!(
            point(f3, 2, &[0, 0]).expand(),
            Poly::from_ints(f3, &[1, 0, 0, 0, 1])
        );
        let f7 = field(7);
        // g = 3: c_2 = gamma c_4, c_1 = gamma^2 c_5, c_0 = gamma^3
        let p = point(f7, 3, &[1, 2, 4]).expand();
        assert_eq!(p, Poly::from_ints(f7, &[27, 9, 6, 4, 2, 1, 1]));
    }

    #[test]
    fn from_poly_round_trip() {
        let f5 = field(5);
        for gamma in Multiplier::all(f5) {
            for p in xi_enumerate(2, gamma, f5) {
                let pt = XiPoint::from_poly(&p, gamma).unwrap();
                assert_eq!(pt.expand(), p);
            }
        }
        assert!(XiPoint::from_poly(&Poly::from_ints(f5, &[3, 1, 1]), gam(f5, 2)).is_none());
    }

    #[test]
    fn enumerate_examples() {
        let f3 = field(3);
        let got: BTreeSet<Poly> = xi_enumerate(1, gam(f3, 2), f3).collect();
        let want: BTreeSet<Poly> = [[2, 0, 1], [2, 1, 1], [2, 2, 1]]
            .iter()
            .map(|c| Poly::from_ints(f3, c))
            .collect();
        assert_eq!(got, want);
        assert_eq!(xi_enumerate(2, gam(f3, 1), f3).count(), 9);
        let f5 = field(5);
        let g1: Vec<Poly> = xi_enumerate(1, Multiplier::ONE, f5).collect();
        assert_eq!(g1.len(), 5);
        assert!(g1.contains(&Poly::linear_power(f5, FieldElem::ONE, 2)));
        assert!(g1.contains(&Poly::linear_power(f5, f5.elem(-1), 2)));
        let distinct: BTreeSet<Poly> = xi_enumerate(3, gam(f5, 2), f5).collect();
        assert_eq!(distinct.len(), 125);
    }

    #[test]
    fn slices_partition_the_space() {
        let f5 = field(5);
        let gamma = gam(f5, 3);
        let whole: BTreeSet<Poly> = xi_enumerate(2, gamma, f5).collect();
        let mut pieces = BTreeSet::new();
        for c in f5.elements() {
            for p in xi_enumerate_slice(2, gamma, f5, c) {
                assert_eq!(p.coeff(3), c);
                assert!(pieces.insert(p));
            }
        }
        assert_eq!(pieces, whole);
    }

    #[test]
    fn property_examples() {
        let f3 = field(3);
        let two = gam(f3, 2);
        let irreducible = Poly::from_ints(f3, &[2, 1, 1]);
        assert!(has_property(&irreducible, two, PropertyTag::RLiteral));
        let split = Poly::from_ints(f3, &[2, 0, 1]);
        assert!(has_property(&split, two, PropertyTag::RLiteral));
        assert!(!has_property(&split, two, PropertyTag::RProof));
        let sq = Poly::from_ints(f3, &[1, 2, 1]);
        assert!(!has_property(&sq, Multiplier::ONE, PropertyTag::RLiteral));
        assert!(!has_property_raw(&sq, PropertyTag::RLiteral));
        // (x - 1)^2 passes the literal box but gamma = 1 is excluded.
        let unip = Poly::linear_power(f3, FieldElem::ONE, 2);
        assert!(has_property_raw(&unip, PropertyTag::RLiteral));
        assert!(!has_property(&unip, Multiplier::ONE, PropertyTag::RLiteral));
    }

    #[test]
    fn r_literal_detects_reciprocal_pairs() {
        // (x - 2)(x - 4)(x - 3)(x - 6) over F_7 with gamma = 12 = 5: 2 * 4 = 1.
        let f7 = field(7);
        let p = [2, 4, 3, 6].iter().fold(Poly::one(f7), |acc, &r| {
            acc.mul(&Poly::linear(f7, f7.elem(r)))
        });
        assert!(satisfies_functional_equation(&p, gam(f7, 5)));
        assert!(!has_property_raw(&p, PropertyTag::RLiteral));
        // (x - 1)^3 (x - 5): triple root at 1.
        let t = Poly::linear_power(f7, FieldElem::ONE, 3).mul(&Poly::linear(f7, f7.elem(5)));
        assert!(!has_property_raw(&t, PropertyTag::RLiteral));
    }

    #[test]
    fn psi_examples() {
        let f3 = field(3);
        let two = gam(f3, 2);
        assert_eq!(psi_count(1, two, f3, PropertyTag::E), BigUint::from(1u32));
        assert_eq!(psi_count(1, two, f3, PropertyTag::N), BigUint::from(2u32));
        assert!(psi_count(1, Multiplier::ONE, f3, PropertyTag::RLiteral).is_zero());
        // Raw literal count at gamma = 1: only (x - 1)^2 survives; the roots of
        // x^2 + 1 are inverse to each other and (x + 1)^2 is a double root at -1.
        let raw = psi_count_with(
            1,
            Multiplier::ONE,
            f3,
            PropertyTag::RLiteral,
            GammaOnePolicy::Raw,
        );
        assert_eq!(raw, BigUint::from(1u32));
    }

    #[test]
    fn e_and_n_partition() {
        for p in [3u32, 5, 7] {
            let f = field(p);
            for gamma in Multiplier::all(f) {
                for g in 1..=3 {
                    let e = psi_count(g, gamma, f, PropertyTag::E);
                    let n = psi_count(g, gamma, f, PropertyTag::N);
                    assert_eq!(e + n, field_power(f, g));
                }
            }
        }
    }

    #[test]
    fn r_proof_implies_r_literal() {
        for p in [3u32, 5, 7, 11] {
            let f = field(p);
            for gamma in Multiplier::all(f) {
                for g in 1..=2 {
                    for poly in xi_enumerate(g, gamma, f) {
                        let lit = has_property_raw(&poly, PropertyTag::RLiteral);
                        let pf = has_property_raw(&poly, PropertyTag::RProof);
                        assert!(!pf || lit, "{poly}");
                        if lit && !pf {
                            let one = FieldElem::ONE;
                            let roots_at_pm1 =
                                poly.eval(one).is_zero() || poly.eval(f.neg(one)).is_zero();
                            assert!(roots_at_pm1, "discrepancy without a root at +-1: {poly}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn eigenweird_examples() {
        let f3 = field(3);
        // Every genus-one polynomial with gamma != 1 satisfies (R).
        assert_eq!(eigenweird_constant(1, gam(f3, 2), f3).unwrap(), q(0, 1));
        let f13 = field(13);
        let c = eigenweird_constant(1, gam(f13, 12), f13).unwrap();
        assert!(c >= q(0, 1) && c <= q(13, 1));
        let f5 = field(5);
        let c = eigenweird_constant(2, gam(f5, 2), f5).unwrap();
        let psi = psi_count(2, gam(f5, 2), f5, PropertyTag::RLiteral);
        assert_eq!(
            c,
            ratio(&(BigUint::from(25u32) - psi), &BigUint::from(5u32))
        );
        assert!(eigenweird_constant(1, Multiplier::ONE, f5).is_err());
    }

    #[test]
    fn delta_bound_examples() {
        assert_eq!(delta_bounds(1, field(3)).unwrap(), (q(27, 8), q(27, 1)));
        assert_eq!(delta_bounds(1, field(5)).unwrap(), (q(125, 9), q(375, 8)));
        let (lo, hi) = delta_bounds(2, field(3)).unwrap();
        let top = 6561i64 * 51840;
        assert_eq!(lo, q(top, 1_048_576));
        assert_eq!(hi, q(top, 1024));
    }

    #[test]
    fn tag_parsing() {
        for tag in PropertyTag::ALL {
            assert_eq!(tag.as_str().parse::<PropertyTag>().unwrap(), tag);
        }
        assert!("Q".parse::<PropertyTag>().is_err());
    }
}
