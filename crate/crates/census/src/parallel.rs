//! Multi-threaded drivers over the sequential engines of the core crate.
//!
//! Work is cut into fixed shards that do not depend on the number of
//! threads, and shard results are merged by addition, so every function
//! here returns exactly what its sequential counterpart returns.

use gsp_census_core::brute::{
    delta_histogram_range, enumerate_coset, montecarlo_shard, shard_count, DeltaHistogram,
    SampleReport,
};
use gsp_census_core::census::CensusParams;
use gsp_census_core::curves::{
    envelope_from_reports, scan_rows, CurveCounter, EnvelopeFit, ScanReport, ScanTally,
};
use gsp_census_core::xi::{property_holds, xi_enumerate_slice, GammaOnePolicy};
use gsp_census_core::{BigCount, Error, Multiplier, PrimeField, PropertyTag, Result};
use num_bigint::BigUint;
use rayon::prelude::*;

/// Runs `f` on a pool with `threads` workers, or on the global pool for
/// `None`.
pub fn with_threads<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

/// Full `Delta` histogram of a coset, sharded by the image of `e_1`.
pub fn delta_histogram(
    g: usize,
    field: PrimeField,
    gamma: Multiplier,
    budget: u64,
) -> Result<DeltaHistogram> {
    let e = enumerate_coset(g, field, gamma, budget)?;
    let shards = e.outer_choices();
    let chunk = e.size() / shards;
    let hist = (0..shards)
        .into_par_iter()
        .map(|s| delta_histogram_range(e.clone(), s * chunk, (s + 1) * chunk))
        .reduce(
            || DeltaHistogram::new(g, field, gamma),
            |mut a, b| {
                a.merge(&b);
                a
            },
        );
    Ok(hist)
}

/// Monte Carlo estimate; identical to the sequential
/// [`gsp_census_core::brute::montecarlo`] for the same seed.
pub fn montecarlo(
    params: CensusParams,
    tag: PropertyTag,
    n: u64,
    seed: u64,
) -> Result<SampleReport> {
    if n == 0 {
        return Err(Error::InvalidParameter("need at least one sample".into()));
    }
    let hits = (0..shard_count(n))
        .into_par_iter()
        .map(|s| montecarlo_shard(params, tag, n, seed, s))
        .sum();
    Ok(SampleReport::from_hits(params, tag, n, hits, seed))
}

/// `#Psi^gamma_tag`, split by the leading free coefficient.
pub fn psi_count(
    g: usize,
    gamma: Multiplier,
    field: PrimeField,
    tag: PropertyTag,
    policy: GammaOnePolicy,
) -> BigCount {
    if g == 0 {
        return gsp_census_core::xi::psi_count_with(g, gamma, field, tag, policy);
    }
    let n: usize = field
        .elements()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|c| {
            xi_enumerate_slice(g, gamma, field, c)
                .filter(|f| property_holds(f, gamma, tag, policy))
                .count()
        })
        .sum();
    BigUint::from(n)
}

/// Full curve scan over `F_q`, one shard per value of `a`.
pub fn scan(q: u32, ell: u32) -> Result<ScanReport> {
    let counter = CurveCounter::new(q)?;
    let tally = (0..q)
        .into_par_iter()
        .map(|a| scan_rows(&counter, ell, a..a + 1))
        .try_reduce(ScanTally::default, |mut x, y| {
            x.merge(&y);
            Ok(x)
        })?;
    ScanReport::from_tally(q, ell, &tally)
}

/// Scans every `q` of the list and fits the envelope constant.
pub fn envelope(ell: u32, gamma: u32, q_list: &[u32]) -> Result<EnvelopeFit> {
    if q_list.is_empty() {
        return Err(Error::InvalidParameter("empty q list".into()));
    }
    if let Some(q) = q_list.iter().find(|&&q| q % ell != gamma % ell) {
        return Err(Error::InvalidParameter(format!(
            "q = {q} is not {gamma} mod {ell}"
        )));
    }
    let reports = q_list
        .par_iter()
        .map(|&q| scan(q, ell))
        .collect::<Result<Vec<_>>>()?;
    envelope_from_reports(&reports)
}
