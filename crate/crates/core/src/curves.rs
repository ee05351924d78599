//! Frobenius statistics of the family of all short Weierstrass curves
//! `y^2 = x^3 + a x + b` over `F_q`.
//!
//! For each nonsingular `(a, b)` the trace `t = q + 1 - #E(F_q)` gives the
//! characteristic polynomial `x^2 - t x + q` of Frobenius on the
//! `l`-torsion, reduced mod `l`; its multiplier is `q mod l`. Frequencies of
//! (E), (N) and (R) over the whole family are compared with the exact
//! proportions in the matching coset of `GSp_2(F_l)`.
//!
//! Curves are counted as parameter pairs, not up to isomorphism.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Range;

use num_bigint::BigUint;
use num_traits::{One, Signed, ToPrimitive};

use crate::brute::{delta_histogram, DEFAULT_BUDGET};
use crate::census::eigen_proportion;
use crate::error::{Error, Result};
use crate::field::{is_prime, Multiplier, PrimeField};
use crate::groups::sp_order;
use crate::poly::Poly;
use crate::xi::{has_property, GammaOnePolicy, PropertyTag};
use crate::{ratio, BigRatio};

/// Tags tracked by a scan, in report order.
pub const SCAN_TAGS: [PropertyTag; 4] = PropertyTag::ALL;

/// Quadratic character table of `F_q`, laid out twice so that `chi[u + v]`
/// needs no reduction for `u, v < q`.
#[derive(Clone, Debug)]
pub struct CurveCounter {
    field: PrimeField,
    chi: Vec<i8>,
}

impl CurveCounter {
    pub fn new(q: u32) -> Result<Self> {
        let field = PrimeField::new(q)?;
        if q == 2 {
            return Err(Error::invalid("q must be an odd prime"));
        }
        let qu = q as usize;
        let mut chi = vec![-1i8; qu];
        chi[0] = 0;
        for x in 1..qu {
            chi[x * x % qu] = 1;
        }
        let doubled = chi.iter().chain(chi.iter()).copied().collect();
        Ok(CurveCounter {
            field,
            chi: doubled,
        })
    }

    pub fn q(&self) -> u32 {
        self.field.modulus()
    }

    /// `4a^3 + 27b^2 = 0` in `F_q`.
    pub fn is_singular(&self, a: u32, b: u32) -> bool {
        let f = self.field;
        let (a, b) = (f.elem(i64::from(a)), f.elem(i64::from(b)));
        let d = f.add(
            f.mul(f.elem(4), f.pow(a, 3)),
            f.mul(f.elem(27), f.mul(b, b)),
        );
        d.is_zero()
    }

    /// `x^3 + a x mod q` for every `x`.
    fn cubic_table(&self, a: u32) -> Vec<u32> {
        let q = u64::from(self.q());
        (0..q)
            .map(|x| ((x * x % q * x + u64::from(a) * x) % q) as u32)
            .collect()
    }

    /// `sum_x chi(h(x) + b)` for a precomputed `h = x^3 + a x`.
    #[inline]
    fn character_sum(&self, cubic: &[u32], b: u32) -> i64 {
        let b = b as usize;
        cubic
            .iter()
            .map(|&h| i64::from(self.chi[h as usize + b]))
            .sum()
    }

    /// `(#E(F_q), t)` with `#E = q + 1 + sum_x chi(x^3 + a x + b)`.
    pub fn point_count(&self, a: u32, b: u32) -> Result<(u64, i64)> {
        let q = self.q();
        if a >= q || b >= q {
            return Err(Error::invalid("curve coefficients must be reduced mod q"));
        }
        if self.is_singular(a, b) {
            return Err(Error::SingularCurve { a, b, q });
        }
        let s = self.character_sum(&self.cubic_table(a), b);
        let count = i64::from(q) + 1 + s;
        let t = -s;
        if (t * t) as u64 > 4 * u64::from(q) {
            return Err(Error::inconsistent(format!(
                "Hasse bound violated: t = {t}, q = {q}"
            )));
        }
        Ok((count as u64, t))
    }
}

/// `(#E(F_q), t)` for `y^2 = x^3 + a x + b`.
pub fn point_count(a: u32, b: u32, q: u32) -> Result<(u64, i64)> {
    CurveCounter::new(q)?.point_count(a, b)
}

/// `x^2 - (t mod l) x + (q mod l)` over `F_l`.
pub fn frob_charpoly_mod(t: i64, q: u32, ell: PrimeField) -> Result<Poly> {
    if q % ell.modulus() == 0 {
        return Err(Error::invalid(format!(
            "l = {} divides q = {q}",
            ell.modulus()
        )));
    }
    Ok(Poly::new(
        ell,
        vec![ell.elem(i64::from(q)), ell.neg(ell.elem(t)), ell.elem(1)],
    ))
}

/// Raw counters of a scan over a band of `a` values; bands merge by addition.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScanTally {
    pub curves: u64,
    pub singular: u64,
    /// Hits per tag, in the order of [`SCAN_TAGS`].
    pub hits: [u64; 4],
    /// Curves with `l | #E(F_q)`.
    pub divisible: u64,
}

impl ScanTally {
    pub fn merge(&mut self, other: &ScanTally) {
        self.curves += other.curves;
        self.singular += other.singular;
        self.divisible += other.divisible;
        for (h, o) in self.hits.iter_mut().zip(other.hits) {
            *h += o;
        }
    }
}

fn validate_scan(q: u32, ell: u32) -> Result<(PrimeField, Multiplier)> {
    if q < 3 || !is_prime(u64::from(q)) {
        return Err(Error::invalid(format!("q = {q} must be an odd prime")));
    }
    let lf = PrimeField::new(ell)?;
    if q % ell == 0 {
        return Err(Error::invalid(format!("l = {ell} divides q = {q}")));
    }
    let gamma = Multiplier::new(lf, q % ell)?;
    Ok((lf, gamma))
}

/// Scans the curves with `a` in `a_range` (every `b`).
pub fn scan_rows(counter: &CurveCounter, ell: u32, a_range: Range<u32>) -> Result<ScanTally> {
    let q = counter.q();
    let (lf, gamma) = validate_scan(q, ell)?;
    // The property of the Frobenius polynomial depends only on t mod l.
    let table: Vec<[bool; 4]> = (0..ell)
        .map(|t| -> Result<[bool; 4]> {
            let f = frob_charpoly_mod(i64::from(t), q, lf)?;
            Ok(SCAN_TAGS.map(|tag| has_property(&f, gamma, tag)))
        })
        .collect::<Result<_>>()?;
    let l = i64::from(ell);
    let mut tally = ScanTally::default();
    for a in a_range {
        if a >= q {
            break;
        }
        let cubic = counter.cubic_table(a);
        for b in 0..q {
            if counter.is_singular(a, b) {
                tally.singular += 1;
                continue;
            }
            let s = counter.character_sum(&cubic, b);
            let count = i64::from(q) + 1 + s;
            let t = -s;
            if (t * t) as u64 > 4 * u64::from(q) {
                return Err(Error::inconsistent(format!(
                    "Hasse bound violated at ({a}, {b})"
                )));
            }
            let props = table[t.rem_euclid(l) as usize];
            let divisible = count % l == 0;
            // f(1) = 1 - t + q = #E, so (E) must coincide with l | #E.
            if props[0] != divisible {
                return Err(Error::inconsistent(format!(
                    "f(1) disagrees with #E mod l at ({a}, {b}) over F_{q}"
                )));
            }
            tally.curves += 1;
            tally.divisible += u64::from(divisible);
            for (h, p) in tally.hits.iter_mut().zip(props) {
                *h += u64::from(p);
            }
        }
    }
    Ok(tally)
}

/// Exact proportions `#W^gamma_tag / #Sp_2(F_l)` for the tags of a scan.
pub fn genus_one_targets(ell: PrimeField, gamma: Multiplier) -> Result<[BigRatio; 4]> {
    let e = eigen_proportion(1, gamma, ell)?;
    let hist = delta_histogram(1, ell, gamma, DEFAULT_BUDGET)?;
    let sp = sp_order(1, ell);
    let by_count = |tag| ratio(&hist.count(tag, GammaOnePolicy::Empty), &sp);
    let brute_e = by_count(PropertyTag::E);
    if brute_e != e {
        return Err(Error::inconsistent(
            "genus-one (E) proportion: formula and enumeration differ",
        ));
    }
    let n = BigRatio::one() - &e;
    Ok([
        e,
        n,
        by_count(PropertyTag::RLiteral),
        by_count(PropertyTag::RProof),
    ])
}

/// Frequencies of each tag over one full scan, next to the group-theoretic
/// targets.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport {
    pub q: u32,
    pub ell: u32,
    pub gamma: Multiplier,
    pub curves: u64,
    pub singular: u64,
    /// `(tag, hits, frequency, target, |frequency - target|)`, one per tag.
    pub rows: Vec<ScanRow>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanRow {
    pub tag: PropertyTag,
    pub hits: u64,
    pub frequency: BigRatio,
    pub target: BigRatio,
    pub deviation: BigRatio,
}

impl ScanReport {
    pub fn from_tally(q: u32, ell: u32, tally: &ScanTally) -> Result<Self> {
        let (lf, gamma) = validate_scan(q, ell)?;
        let total = u64::from(q) * u64::from(q);
        if tally.curves + tally.singular != total {
            return Err(Error::inconsistent(format!(
                "{} curves + {} singular pairs != q^2 = {total}",
                tally.curves, tally.singular
            )));
        }
        if tally.divisible != tally.hits[0] {
            return Err(Error::inconsistent("(E) count differs from l | #E count"));
        }
        let targets = genus_one_targets(lf, gamma)?;
        let n = BigUint::from(tally.curves);
        let rows = SCAN_TAGS
            .iter()
            .zip(tally.hits)
            .zip(targets)
            .map(|((&tag, hits), target)| {
                let frequency = ratio(&BigUint::from(hits), &n);
                let deviation = (&frequency - &target).abs();
                ScanRow {
                    tag,
                    hits,
                    frequency,
                    target,
                    deviation,
                }
            })
            .collect();
        Ok(ScanReport {
            q,
            ell,
            gamma,
            curves: tally.curves,
            singular: tally.singular,
            rows,
        })
    }

    pub fn row(&self, tag: PropertyTag) -> &ScanRow {
        self.rows
            .iter()
            .find(|r| r.tag == tag)
            .expect("every tag is scanned")
    }

    /// `|frequency - target| * sqrt(q)` for the tag.
    pub fn scaled_deviation(&self, tag: PropertyTag) -> f64 {
        ratio_to_f64(&self.row(tag).deviation) * libm::sqrt(f64::from(self.q))
    }
}

pub fn ratio_to_f64(r: &BigRatio) -> f64 {
    let n = r.numer().to_f64().unwrap_or(f64::NAN);
    let d = r.denom().to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Scans every curve over `F_q` and compares with the targets for
/// multiplier `q mod l`.
pub fn scan(q: u32, ell: u32) -> Result<ScanReport> {
    validate_scan(q, ell)?;
    let counter = CurveCounter::new(q)?;
    let tally = scan_rows(&counter, ell, 0..q)?;
    ScanReport::from_tally(q, ell, &tally)
}

/// Primes `3 <= q <= q_max` with `q = gamma mod l`, ascending.
pub fn primes_in_class(ell: u32, gamma: u32, q_max: u32) -> Vec<u32> {
    (3..=q_max)
        .filter(|&q| q % ell == gamma % ell && q % ell != 0 && is_prime(u64::from(q)))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnvelopePoint {
    pub q: u32,
    pub deviation: f64,
    /// `deviation * sqrt(q)`
    pub scaled: f64,
}

/// The fitted equidistribution constant for one progression: the maximum
/// of `|frequency - target| sqrt(q)` over the scanned `q`, for tag (E).
#[derive(Clone, Debug, PartialEq)]
pub struct EnvelopeFit {
    pub ell: u32,
    pub gamma: u32,
    pub points: Vec<EnvelopePoint>,
    pub constant: f64,
}

impl EnvelopeFit {
    fn half_max(points: &[EnvelopePoint]) -> f64 {
        points.iter().map(|p| p.scaled).fold(0.0, f64::max)
    }

    pub fn first_half_max(&self) -> f64 {
        Self::half_max(&self.points[..self.points.len() / 2])
    }

    pub fn second_half_max(&self) -> f64 {
        Self::half_max(&self.points[self.points.len() / 2..])
    }

    /// The non-divergence check: the second-half maximum is at most twice
    /// the first-half maximum.
    pub fn bounded_trend(&self) -> bool {
        self.second_half_max() <= 2.0 * self.first_half_max()
    }
}

/// Builds the fit from finished scans, which must share `l` and `gamma` and
/// come in ascending order of `q`.
pub fn envelope_from_reports(reports: &[ScanReport]) -> Result<EnvelopeFit> {
    let first = reports
        .first()
        .ok_or_else(|| Error::invalid("empty q list"))?;
    let (ell, gamma) = (first.ell, first.gamma.value());
    let mut points = Vec::with_capacity(reports.len());
    let mut last = 0;
    for r in reports {
        if r.ell != ell || r.gamma.value() != gamma {
            return Err(Error::invalid(format!(
                "q = {} is not {gamma} mod {ell}",
                r.q
            )));
        }
        if r.q <= last {
            return Err(Error::invalid("q list must be strictly ascending"));
        }
        last = r.q;
        let deviation = ratio_to_f64(&r.row(PropertyTag::E).deviation);
        points.push(EnvelopePoint {
            q: r.q,
            deviation,
            scaled: r.scaled_deviation(PropertyTag::E),
        });
    }
    let constant = points.iter().map(|p| p.scaled).fold(0.0, f64::max);
    Ok(EnvelopeFit {
        ell,
        gamma,
        points,
        constant,
    })
}

/// Scans every `q` in `q_list` (sequentially) and fits the envelope.
pub fn envelope_fit(ell: u32, gamma: u32, q_list: &[u32]) -> Result<EnvelopeFit> {
    if q_list.is_empty() {
        return Err(Error::invalid("empty q list"));
    }
    for &q in q_list {
        if q % ell != gamma % ell {
            return Err(Error::invalid(format!("q = {q} is not {gamma} mod {ell}")));
        }
    }
    let reports = q_list
        .iter()
        .map(|&q| scan(q, ell))
        .collect::<Result<Vec<_>>>()?;
    envelope_from_reports(&reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRatio {
        BigRatio::new(BigInt::from(n), BigInt::from(d))
    }

    /// Affine points by listing every `(x, y)`.
    fn count_by_listing(a: u64, b: u64, p: u64) -> u64 {
        let mut n = 1;
        for x in 0..p {
            for y in 0..p {
                if (y * y) % p == (x * x * x + a * x + b) % p {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn point_count_examples() {
        assert_eq!(point_count(1, 0, 5).unwrap(), (4, 2));
        assert_eq!(point_count(0, 1, 5).unwrap(), (6, 0));
        assert!(matches!(
            point_count(0, 0, 5),
            Err(Error::SingularCurve { .. })
        ));
        assert!(point_count(1, 0, 2).is_err());
    }

    #[test]
    fn point_count_matches_listing() {
        for p in [3u32, 5, 7, 11, 13] {
            let c = CurveCounter::new(p).unwrap();
            for a in 0..p {
                for b in 0..p {
                    if c.is_singular(a, b) {
                        continue;
                    }
                    let (n, t) = c.point_count(a, b).unwrap();
                    assert_eq!(n, count_by_listing(a.into(), b.into(), p.into()));
                    assert!(t * t <= 4 * i64::from(p));
                }
            }
        }
    }

    #[test]
    fn frobenius_examples() {
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(
            frob_charpoly_mod(2, 5, f3).unwrap(),
            Poly::from_ints(f3, &[2, 1, 1])
        );
        assert_eq!(
            frob_charpoly_mod(0, 5, f3).unwrap(),
            Poly::from_ints(f3, &[2, 0, 1])
        );
        assert!(frob_charpoly_mod(0, 9, f3).is_err());
    }

    #[test]
    fn scan_targets() {
        let r7 = scan(7, 3).unwrap();
        assert_eq!(r7.gamma.value(), 1);
        assert_eq!(r7.row(PropertyTag::E).target, q(3, 8));
        assert_eq!(r7.curves + r7.singular, 49);
        let r5 = scan(5, 3).unwrap();
        assert_eq!(r5.gamma.value(), 2);
        assert_eq!(r5.row(PropertyTag::E).target, q(1, 2));
        // gamma != 1 in genus one: every polynomial satisfies (R).
        assert_eq!(r5.row(PropertyTag::RLiteral).target, q(1, 1));
        assert_eq!(r7.row(PropertyTag::RLiteral).target, q(0, 1));
        let r13 = scan(13, 3).unwrap();
        assert_eq!(r13.row(PropertyTag::E).target, q(3, 8));
    }

    #[test]
    fn scan_frequency_is_exact() {
        // Independent recount of l | #E for q = 11, l = 5.
        let c = CurveCounter::new(11).unwrap();
        let mut div = 0;
        let mut total = 0;
        for a in 0..11 {
            for b in 0..11 {
                if !c.is_singular(a, b) {
                    total += 1;
                    div += u64::from(count_by_listing(a.into(), b.into(), 11) % 5 == 0);
                }
            }
        }
        let r = scan(11, 5).unwrap();
        assert_eq!(r.curves, total);
        assert_eq!(r.row(PropertyTag::E).hits, div);
        let e = r.row(PropertyTag::E).hits;
        let n = r.row(PropertyTag::N).hits;
        assert_eq!(e + n, r.curves);
    }

    #[test]
    fn banded_scan_matches_whole() {
        let c = CurveCounter::new(31).unwrap();
        let whole = scan_rows(&c, 5, 0..31).unwrap();
        let mut merged = scan_rows(&c, 5, 0..10).unwrap();
        merged.merge(&scan_rows(&c, 5, 10..31).unwrap());
        assert_eq!(whole, merged);
    }

    #[test]
    fn scan_rejects_bad_parameters() {
        assert!(scan(9, 3).is_err());
        assert!(scan(3, 3).is_err());
        assert!(scan(2, 3).is_err());
        assert!(scan(7, 4).is_err());
    }

    #[test]
    fn envelope_single_and_errors() {
        let fit = envelope_fit(3, 1, &[7]).unwrap();
        let r = scan(7, 3).unwrap();
        assert_eq!(fit.constant, r.scaled_deviation(PropertyTag::E));
        assert!(envelope_fit(3, 1, &[]).is_err());
        assert!(envelope_fit(3, 1, &[7, 11]).is_err());
        assert!(envelope_fit(3, 1, &[13, 7]).is_err());
    }

    #[test]
    fn progression_primes() {
        assert_eq!(primes_in_class(3, 1, 40), [7, 13, 19, 31, 37]);
        assert_eq!(primes_in_class(3, 2, 30), [5, 11, 17, 23, 29]);
    }
}
