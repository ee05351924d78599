use gsp_census_core::brute::{delta_histogram, sample_uniform, shard_rng, DEFAULT_BUDGET};
use gsp_census_core::{Multiplier, PrimeField};
use statrs::distribution::{ChiSquared, ContinuousCDF};

fn chi_square_against_brute(g: usize, p: u32, gamma: u32, n: u64, seed: u64) -> (f64, f64) {
    let f = PrimeField::new(p).unwrap();
    let gamma = Multiplier::new(f, gamma).unwrap();
    let hist = delta_histogram(g, f, gamma, DEFAULT_BUDGET).unwrap();
    let total: u64 = hist.iter().map(|(_, c)| c).sum();
    let mut observed = std::collections::BTreeMap::new();
    let mut rng = shard_rng(seed, 0);
    for _ in 0..n {
        let m = sample_uniform(g, f, gamma, &mut rng);
        assert_eq!(m.similitude_multiplier(), Some(gamma));
        *observed.entry(m.charpoly()).or_insert(0u64) += 1;
    }
    let mut stat = 0.0;
    for (poly, c) in hist.iter() {
        let expected = n as f64 * c as f64 / total as f64;
        let o = observed.remove(poly).unwrap_or(0) as f64;
        stat += (o - expected).powi(2) / expected;
    }
    assert!(
        observed.is_empty(),
        "sampled a polynomial outside the coset"
    );
    let df = (hist.len() - 1) as f64;
    let critical = ChiSquared::new(df).unwrap().inverse_cdf(0.999);
    (stat, critical)
}

#[test]
fn genus_one_charpolys_are_uniformly_weighted() {
    let (stat, critical) = chi_square_against_brute(1, 3, 1, 100_000, 7);
    assert!(stat <= critical, "chi^2 = {stat} > {critical}");
}

#[test]
fn genus_two_charpolys_are_uniformly_weighted() {
    let (stat, critical) = chi_square_against_brute(2, 3, 2, 50_000, 11);
    assert!(stat <= critical, "chi^2 = {stat} > {critical}");
}
