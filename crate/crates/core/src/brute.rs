//! Ground truth by exhaustion and by exact uniform sampling.
//!
//! Elements of `Sp_2g(F_l)` are in bijection with symplectic bases
//! `(e'_1..e'_g, f'_1..f'_g)`. Such a basis is built one hyperbolic pair at a
//! time: `e'_1` is any nonzero vector of the current space, `f'_1` any vector
//! with `<e'_1, f'_1> = 1`, and the rest is a symplectic basis of the
//! orthogonal complement of `span(e'_1, f'_1)`. With a canonical completion
//! `B(a, b)` of a first pair, every element factors uniquely as
//!
//! ```text
//! A = B_g(a_g, b_g) * embed(B_{g-1}(a_{g-1}, b_{g-1}) * embed(...))
//! ```
//!
//! so a mixed-radix index over the choices `(a_k, b_k)` enumerates the group
//! without repetition, and drawing each choice uniformly samples it exactly
//! uniformly. Right multiplication by `diag(I_g, gamma I_g)` carries
//! `Sp_2g` onto the coset of multiplier `gamma`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::census::CensusParams;
use crate::error::{Error, Result};
use crate::field::{FieldElem, Multiplier, PrimeField};
use crate::groups::{field_power, sp_order};
use crate::matrix::{pairing, SpMatrix};
use crate::poly::Poly;
use crate::xi::{property_holds, GammaOnePolicy, PropertyTag};
use crate::BigCount;

/// Default cap on the number of elements an exhaustive pass may visit.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

fn check_budget(required: &BigUint, budget: u64) -> Result<u64> {
    match required.to_u64() {
        Some(n) if n <= budget => Ok(n),
        _ => Err(Error::BudgetExceeded {
            required: required.to_u128().unwrap_or(u128::MAX),
            budget,
        }),
    }
}

/// Base-`l` digits of `index`, most significant coordinate first.
fn vector_from_index(field: PrimeField, dim: usize, mut index: u64) -> Vec<FieldElem> {
    let p = u64::from(field.modulus());
    let mut v = vec![FieldElem::ZERO; dim];
    for slot in v.iter_mut().rev() {
        *slot = field.from_canonical((index % p) as u32);
        index /= p;
    }
    v
}

/// The linear functional `b -> <a, b>` as a coefficient row.
fn pairing_row(field: PrimeField, a: &[FieldElem]) -> Vec<FieldElem> {
    let k = a.len() / 2;
    (0..2 * k)
        .map(|j| if j < k { field.neg(a[j + k]) } else { a[j - k] })
        .collect()
}

/// The vector `b` with `<a, b> = target` whose coordinates other than the
/// pivot are `free` (in increasing coordinate order). The pivot is the first
/// coordinate on which `<a, .>` does not vanish.
fn solve_pairing(
    field: PrimeField,
    a: &[FieldElem],
    target: FieldElem,
    free: &[FieldElem],
) -> Vec<FieldElem> {
    let row = pairing_row(field, a);
    let pivot = row.iter().position(|c| !c.is_zero()).expect("a is nonzero");
    let mut b = Vec::with_capacity(row.len());
    let mut it = free.iter();
    for j in 0..row.len() {
        b.push(if j == pivot {
            FieldElem::ZERO
        } else {
            *it.next().expect("free coordinates")
        });
    }
    let partial = row
        .iter()
        .zip(&b)
        .fold(FieldElem::ZERO, |acc, (&c, &x)| field.mul_add(c, x, acc));
    let rhs = field.sub(target, partial);
    b[pivot] = field.div(rhs, row[pivot]).expect("pivot is nonzero");
    b
}

/// Removes the `span(x, y)` component of `v`, given `<x, y> = 1`.
fn project_out(field: PrimeField, v: &mut [FieldElem], x: &[FieldElem], y: &[FieldElem]) {
    let vy = pairing(field, v, y);
    let vx = pairing(field, v, x);
    for i in 0..v.len() {
        // v - <v,y> x + <v,x> y
        let t = field.sub(v[i], field.mul(vy, x[i]));
        v[i] = field.mul_add(vx, y[i], t);
    }
}

/// A symplectic matrix of size `2k` whose columns `0` and `k` are `a` and
/// `b` (`<a, b> = 1`); the other columns come from symplectic Gram-Schmidt
/// applied to the standard basis.
fn complete_pair(field: PrimeField, a: &[FieldElem], b: &[FieldElem]) -> SpMatrix {
    let n = a.len();
    let k = n / 2;
    let mut pool: Vec<Vec<FieldElem>> = (0..n)
        .map(|i| {
            let mut v = vec![FieldElem::ZERO; n];
            v[i] = FieldElem::ONE;
            project_out(field, &mut v, a, b);
            v
        })
        .filter(|v| v.iter().any(|c| !c.is_zero()))
        .collect();
    let mut columns = vec![Vec::new(); n];
    columns[0] = a.to_vec();
    columns[k] = b.to_vec();
    for slot in 1..k {
        let x = pool.remove(0);
        let yi = pool
            .iter()
            .position(|y| !pairing(field, &x, y).is_zero())
            .expect("complement is nondegenerate");
        let y = pool.remove(yi);
        let s = field.inv(pairing(field, &x, &y)).expect("nonzero pairing");
        let y: Vec<FieldElem> = y.iter().map(|&c| field.mul(c, s)).collect();
        for v in pool.iter_mut() {
            project_out(field, v, &x, &y);
        }
        pool.retain(|v| v.iter().any(|c| !c.is_zero()));
        columns[slot] = x;
        columns[k + slot] = y;
    }
    SpMatrix::from_columns(field, k, &columns)
}

/// Puts a `2(k-1)` matrix on the complement of the first hyperbolic pair of
/// `F_l^{2k}`.
fn embed(inner: &SpMatrix, k: usize) -> SpMatrix {
    let field = inner.field();
    let mut out = SpMatrix::identity(field, k);
    let h = k - 1;
    let map = |i: usize| if i < h { i + 1 } else { i - h + k + 1 };
    for i in 0..2 * h {
        for j in 0..2 * h {
            out.set(map(i), map(j), inner.get(i, j));
        }
    }
    out
}

/// Assembles `B_g * embed(B_{g-1} * ...)` from the pairs, outermost first,
/// and shifts into the coset of `gamma`.
fn assemble(
    field: PrimeField,
    gamma: Multiplier,
    pairs: &[(Vec<FieldElem>, Vec<FieldElem>)],
) -> SpMatrix {
    let g = pairs.len();
    let mut acc: Option<SpMatrix> = None;
    for (depth, (a, b)) in pairs.iter().enumerate().rev() {
        let k = g - depth;
        let step = complete_pair(field, a, b);
        acc = Some(match acc {
            None => step,
            Some(inner) => step.mul(&embed(&inner, k)),
        });
    }
    let sp = acc.unwrap_or_else(|| SpMatrix::identity(field, 0));
    if gamma.is_one() {
        sp
    } else {
        sp.mul(&SpMatrix::coset_representative(field, g, gamma))
    }
}

#[derive(Clone, Copy, Debug)]
struct Level {
    dim: usize,
    /// `l^(2k) - 1` choices of the first vector.
    firsts: u64,
    /// `l^(2k-1)` choices of the second.
    seconds: u64,
    /// Number of elements of the smaller group below this level.
    below: u64,
}

/// Exhaustive, repetition-free enumeration of `GSp_2g^gamma(F_l)` in a fixed
/// order. Indices run over `0..#Sp_2g`; a sub-range can be iterated on its
/// own, which is how work is sharded.
#[derive(Clone, Debug)]
pub struct CosetEnumerator {
    field: PrimeField,
    gamma: Multiplier,
    levels: Vec<Level>,
    total: u64,
    next: u64,
    end: u64,
}

impl CosetEnumerator {
    pub fn new(g: usize, field: PrimeField, gamma: Multiplier, budget: u64) -> Result<Self> {
        if g == 0 {
            return Err(Error::invalid("g must be at least 1"));
        }
        let total = check_budget(&sp_order(g, field), budget)?;
        let p = u64::from(field.modulus());
        let mut levels = Vec::with_capacity(g);
        let mut below = 1u64;
        for k in 1..=g {
            let firsts = p.pow(2 * k as u32) - 1;
            let seconds = p.pow(2 * k as u32 - 1);
            levels.push(Level {
                dim: 2 * k,
                firsts,
                seconds,
                below,
            });
            below *= firsts * seconds;
        }
        levels.reverse();
        debug_assert_eq!(below, total);
        Ok(CosetEnumerator {
            field,
            gamma,
            levels,
            total,
            next: 0,
            end: total,
        })
    }

    /// `#Sp_2g(F_l)`, the size of the coset.
    pub fn size(&self) -> u64 {
        self.total
    }

    /// Number of values taken by the outermost choice; shard boundaries that
    /// are multiples of `size() / outer_choices()` fix the image of `e_1`.
    pub fn outer_choices(&self) -> u64 {
        self.levels[0].firsts
    }

    /// Restricts iteration to indices `start..end`.
    pub fn with_range(mut self, start: u64, end: u64) -> Self {
        self.end = end.min(self.total);
        self.next = start.min(self.end);
        self
    }

    /// The element with the given index.
    pub fn element_at(&self, mut index: u64) -> SpMatrix {
        assert!(index < self.total, "index out of range");
        let mut pairs = Vec::with_capacity(self.levels.len());
        for lvl in &self.levels {
            let digit = index / lvl.below;
            index %= lvl.below;
            let (ai, bi) = (digit / lvl.seconds, digit % lvl.seconds);
            let a = vector_from_index(self.field, lvl.dim, ai + 1);
            let free = vector_from_index(self.field, lvl.dim - 1, bi);
            let b = solve_pairing(self.field, &a, FieldElem::ONE, &free);
            pairs.push((a, b));
        }
        assemble(self.field, self.gamma, &pairs)
    }
}

impl Iterator for CosetEnumerator {
    type Item = SpMatrix;

    fn next(&mut self) -> Option<SpMatrix> {
        if self.next >= self.end {
            return None;
        }
        let m = self.element_at(self.next);
        self.next += 1;
        Some(m)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next) as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for CosetEnumerator {}

pub fn enumerate_coset(
    g: usize,
    field: PrimeField,
    gamma: Multiplier,
    budget: u64,
) -> Result<CosetEnumerator> {
    CosetEnumerator::new(g, field, gamma, budget)
}

/// Every `2g x 2g` matrix over `F_l`, filtered down to the similitudes.
#[derive(Clone, Debug)]
pub struct NaiveEnumerator {
    field: PrimeField,
    g: usize,
    digits: Vec<u32>,
    done: bool,
}

impl Iterator for NaiveEnumerator {
    type Item = (SpMatrix, Multiplier);

    fn next(&mut self) -> Option<Self::Item> {
        let p = self.field.modulus();
        while !self.done {
            let entries = self
                .digits
                .iter()
                .map(|&d| self.field.from_canonical(d))
                .collect();
            let m = SpMatrix::from_entries(self.field, self.g, entries).expect("square");
            self.done = true;
            for d in self.digits.iter_mut().rev() {
                *d += 1;
                if *d < p {
                    self.done = false;
                    break;
                }
                *d = 0;
            }
            if let Some(gamma) = m.similitude_multiplier() {
                return Some((m, gamma));
            }
        }
        None
    }
}

/// Filters all `l^(4g^2)` matrices; refuses when that exceeds `budget`.
pub fn enumerate_naive(g: usize, field: PrimeField, budget: u64) -> Result<NaiveEnumerator> {
    if g == 0 {
        return Err(Error::invalid("g must be at least 1"));
    }
    check_budget(&field_power(field, 4 * g * g), budget)?;
    Ok(NaiveEnumerator {
        field,
        g,
        digits: vec![0; 4 * g * g],
        done: false,
    })
}

/// One exactly uniform element of `GSp_2g^gamma(F_l)`.
pub fn sample_uniform<R: Rng + ?Sized>(
    g: usize,
    field: PrimeField,
    gamma: Multiplier,
    rng: &mut R,
) -> SpMatrix {
    let p = field.modulus();
    let draw = |n: usize, rng: &mut R| -> Vec<FieldElem> {
        (0..n)
            .map(|_| field.from_canonical(rng.gen_range(0..p)))
            .collect()
    };
    let mut pairs = Vec::with_capacity(g);
    for k in (1..=g).rev() {
        let a = loop {
            let v = draw(2 * k, rng);
            if v.iter().any(|c| !c.is_zero()) {
                break v;
            }
        };
        let free = draw(2 * k - 1, rng);
        let b = solve_pairing(field, &a, FieldElem::ONE, &free);
        pairs.push((a, b));
    }
    assemble(field, gamma, &pairs)
}

/// `Delta(f)` for every characteristic polynomial `f` met in one coset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaHistogram {
    pub g: usize,
    pub field: PrimeField,
    pub gamma: Multiplier,
    counts: BTreeMap<Poly, u64>,
}

impl DeltaHistogram {
    pub fn new(g: usize, field: PrimeField, gamma: Multiplier) -> Self {
        DeltaHistogram {
            g,
            field,
            gamma,
            counts: BTreeMap::new(),
        }
    }

    pub fn record(&mut self, f: Poly) {
        *self.counts.entry(f).or_insert(0) += 1;
    }

    pub fn merge(&mut self, other: &DeltaHistogram) {
        for (f, &n) in &other.counts {
            *self.counts.entry(f.clone()).or_insert(0) += n;
        }
    }

    pub fn get(&self, f: &Poly) -> u64 {
        self.counts.get(f).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Poly, u64)> {
        self.counts.iter().map(|(f, &n)| (f, n))
    }

    /// Number of distinct characteristic polynomials seen.
    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn total(&self) -> BigCount {
        self.counts.values().map(|&n| BigUint::from(n)).sum()
    }

    /// `#W^gamma_tag`: the number of elements whose polynomial has the property.
    pub fn count(&self, tag: PropertyTag, policy: GammaOnePolicy) -> BigCount {
        self.counts
            .iter()
            .filter(|(f, _)| property_holds(f, self.gamma, tag, policy))
            .map(|(_, &n)| BigUint::from(n))
            .sum()
    }
}

/// Histogram over the indices `start..end` of the coset enumeration.
pub fn delta_histogram_range(enumerator: CosetEnumerator, start: u64, end: u64) -> DeltaHistogram {
    let levels = enumerator.levels.len();
    let mut hist = DeltaHistogram::new(levels, enumerator.field, enumerator.gamma);
    for m in enumerator.with_range(start, end) {
        hist.record(m.charpoly());
    }
    hist
}

pub fn delta_histogram(
    g: usize,
    field: PrimeField,
    gamma: Multiplier,
    budget: u64,
) -> Result<DeltaHistogram> {
    let e = CosetEnumerator::new(g, field, gamma, budget)?;
    let n = e.size();
    Ok(delta_histogram_range(e, 0, n))
}

/// Exact `#W^gamma_tag` together with the full histogram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteCount {
    pub count: BigCount,
    pub histogram: DeltaHistogram,
}

pub fn count_brute(
    g: usize,
    field: PrimeField,
    gamma: Multiplier,
    tag: PropertyTag,
    budget: u64,
) -> Result<BruteCount> {
    let histogram = delta_histogram(g, field, gamma, budget)?;
    let count = histogram.count(tag, GammaOnePolicy::Empty);
    Ok(BruteCount { count, histogram })
}

/// Samples per Monte Carlo shard. Shards, not threads, own random streams,
/// so results do not depend on how shards are scheduled.
pub const SHARD_SAMPLES: u64 = 1 << 14;

pub fn shard_count(n: u64) -> u64 {
    n.div_ceil(SHARD_SAMPLES)
}

/// ChaCha8 keyed by `seed`, on the stream numbered by the shard.
pub fn shard_rng(seed: u64, shard: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(shard);
    rng
}

/// Hits among the samples of one shard of an `n`-sample run.
pub fn montecarlo_shard(
    params: CensusParams,
    tag: PropertyTag,
    n: u64,
    seed: u64,
    shard: u64,
) -> u64 {
    let start = shard * SHARD_SAMPLES;
    let len = SHARD_SAMPLES.min(n.saturating_sub(start));
    let mut rng = shard_rng(seed, shard);
    let mut hits = 0;
    for _ in 0..len {
        let m = sample_uniform(params.g, params.field, params.gamma, &mut rng);
        if property_holds(&m.charpoly(), params.gamma, tag, GammaOnePolicy::Empty) {
            hits += 1;
        }
    }
    hits
}

/// Summary of a Monte Carlo run. `estimate = hits / n` and
/// `stderr = sqrt(estimate (1 - estimate) / n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleReport {
    pub params: CensusParams,
    pub tag: PropertyTag,
    pub n_samples: u64,
    pub hits: u64,
    pub estimate: f64,
    pub stderr: f64,
    pub seed: u64,
}

impl SampleReport {
    pub fn from_hits(
        params: CensusParams,
        tag: PropertyTag,
        n_samples: u64,
        hits: u64,
        seed: u64,
    ) -> Self {
        let estimate = hits as f64 / n_samples as f64;
        let stderr = libm::sqrt(estimate * (1.0 - estimate) / n_samples as f64);
        SampleReport {
            params,
            tag,
            n_samples,
            hits,
            estimate,
            stderr,
            seed,
        }
    }

    /// `estimate -+ z stderr`
    pub fn interval(&self, z: f64) -> (f64, f64) {
        (
            self.estimate - z * self.stderr,
            self.estimate + z * self.stderr,
        )
    }
}

/// Sequential Monte Carlo estimate of the proportion of the coset with the
/// property. Deterministic in `seed`.
pub fn montecarlo(
    params: CensusParams,
    tag: PropertyTag,
    n: u64,
    seed: u64,
) -> Result<SampleReport> {
    if n == 0 {
        return Err(Error::invalid("need at least one sample"));
    }
    let hits = (0..shard_count(n))
        .map(|s| montecarlo_shard(params, tag, n, seed, s))
        .sum();
    Ok(SampleReport::from_hits(params, tag, n, hits, seed))
}
