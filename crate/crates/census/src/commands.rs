//! One function per subcommand, each producing a [`CensusRecord`].
//!
//! A [`Job`] is the parsed form of a command line. Its parameter map uses
//! the flag names, so a record can be turned back into the argument list
//! that reproduces it (see [`Job::argv`]).

use std::collections::BTreeMap;

use gsp_census_core::census::{abvar_leading, eigen_census, psitow_bounds, t_count, CensusParams};
use gsp_census_core::curves::{primes_in_class, ratio_to_f64, SCAN_TAGS};
use gsp_census_core::field::is_prime;
use gsp_census_core::groups::{field_power, sp_order};
use gsp_census_core::xi::{
    codim_two_constant, delta_bounds, eigenweird_constant, property_holds, xi_enumerate,
    GammaOnePolicy,
};
use gsp_census_core::{ratio, BigRatio, Error, Multiplier, PrimeField, PropertyTag, Result};
use num_bigint::BigUint;
use rayon::prelude::*;

use crate::parallel;
use crate::record::{CensusRecord, Provenance};

#[derive(Clone, Debug, PartialEq)]
pub enum Job {
    CensusExact {
        g: usize,
        ell: u32,
        gamma: Option<u32>,
        all_gamma: bool,
    },
    CensusSweep {
        g: usize,
        ell_max: u32,
    },
    BruteCount {
        g: usize,
        ell: u32,
        gamma: u32,
        prop: PropertyTag,
        budget: u64,
    },
    BruteDelta {
        g: usize,
        ell: u32,
        gamma: u32,
        budget: u64,
    },
    Sample {
        g: usize,
        ell: u32,
        gamma: u32,
        prop: PropertyTag,
        n: u64,
        seed: u64,
    },
    CharpolyEnum {
        g: usize,
        ell: u32,
        gamma: u32,
        prop: Option<PropertyTag>,
        raw_gamma_one: bool,
    },
    CharpolyCount {
        g: usize,
        ell: u32,
        gamma: u32,
        prop: PropertyTag,
        raw_gamma_one: bool,
    },
    BoundsPsitow {
        g: usize,
        ell: u32,
        psi: BigUint,
    },
    BoundsDelta {
        g: usize,
        ell: u32,
    },
    BoundsEigenweird {
        g: usize,
        ell: u32,
        gamma: Option<u32>,
        codim2: bool,
    },
    CurvesScan {
        q: u32,
        ell: u32,
    },
    CurvesEnvelope {
        ell: u32,
        gamma: u32,
        q_max: u32,
    },
}

fn policy(raw: bool) -> GammaOnePolicy {
    if raw {
        GammaOnePolicy::Raw
    } else {
        GammaOnePolicy::Empty
    }
}

fn field(ell: u32) -> Result<PrimeField> {
    PrimeField::new(ell)
}

fn multiplier(f: PrimeField, gamma: u32) -> Result<Multiplier> {
    if gamma >= f.modulus() {
        return Err(Error::InvalidParameter(format!(
            "gamma = {gamma} must be a residue in 1..{}",
            f.modulus()
        )));
    }
    Multiplier::new(f, gamma)
}

fn need_g(g: usize) -> Result<()> {
    if g == 0 {
        return Err(Error::InvalidParameter("g must be at least 1".into()));
    }
    Ok(())
}

fn as_f64(r: &BigRatio) -> f64 {
    ratio_to_f64(r)
}

fn whole(n: u64) -> BigUint {
    BigUint::from(n)
}

impl Job {
    /// Subcommand words, e.g. `"census exact"`.
    pub fn command(&self) -> &'static str {
        match self {
            Job::CensusExact { .. } => "census exact",
            Job::CensusSweep { .. } => "census sweep",
            Job::BruteCount { .. } => "brute count",
            Job::BruteDelta { .. } => "brute delta",
            Job::Sample { .. } => "sample",
            Job::CharpolyEnum { .. } => "charpoly enum",
            Job::CharpolyCount { .. } => "charpoly count",
            Job::BoundsPsitow { .. } => "bounds psitow",
            Job::BoundsDelta { .. } => "bounds delta",
            Job::BoundsEigenweird { .. } => "bounds eigenweird",
            Job::CurvesScan { .. } => "curves scan",
            Job::CurvesEnvelope { .. } => "curves envelope",
        }
    }

    /// Parameters keyed by flag name. Boolean flags appear only when set.
    pub fn params(&self) -> BTreeMap<String, String> {
        let mut p = BTreeMap::new();
        let mut put = |k: &str, v: String| {
            p.insert(k.to_owned(), v);
        };
        match self {
            Job::CensusExact {
                g,
                ell,
                gamma,
                all_gamma,
            } => {
                put("g", g.to_string());
                put("ell", ell.to_string());
                if let Some(gamma) = gamma {
                    put("gamma", gamma.to_string());
                }
                if *all_gamma {
                    put("all-gamma", "true".into());
                }
            }
            Job::CensusSweep { g, ell_max } => {
                put("g", g.to_string());
                put("ell-max", ell_max.to_string());
            }
            Job::BruteCount {
                g,
                ell,
                gamma,
                prop,
                budget,
            } => {
                put("g", g.to_string());
                put("ell", ell.to_string());
                put("gamma", gamma.to_string());
                put("prop", prop.to_string());
                put("budget", budget.to_string());
            }
            Job::BruteDelta {
                g,
                ell,
                gamma,
                budget,
            } => {
                put("g", g.to_string());
                put("ell", ell.to_string());
                put("gamma", gamma.to_string());
                put("budget", budget.to_string());
            }
            Job::Sample {
                g,
                ell,
                gamma,
                prop,
                n,
                seed,
            } => {
                put("g", g.to_string());
                put("ell", ell.to_string());
                put("gamma", gamma.to_string());
                put("prop", prop.to_string());
                put("n", n.to_string());
                put("seed", seed.to_string());
            }
            Job::CharpolyEnum {
                g,
                ell,
                gamma,
                prop,
                raw_gamma_one,
            } => {
                put("g", g.to_string());
                put("ell", ell.to_string());
                put("gamma", gamma.to_string());
                if let Some(prop) = prop {
                    put("prop", prop.to_string());
                }
                if *raw_gamma_one {
                    put("raw-gamma-one", "true".into());
                }
            }
            Job::CharpolyCount {
                g,
                ell,
                gamma,
                prop,
                raw_gamma_one,
            } => {
                put("g", g.to_string());
                put("ell", ell.to_string());
                put("gamma", gamma.to_string());
                put("prop", prop.to_string());
                if *raw_gamma_one {
                    put("raw-gamma-one", "true".into());
                }
            }
            Job::BoundsPsitow { g, ell, psi } => {
                put("g", g.to_string());
                put("ell", ell.to_string());
                put("psi", psi.to_string());
            }
            Job::BoundsDelta { g, ell } => {
                put("g", g.to_string());
                put("ell", ell.to_string());
            }
            Job::BoundsEigenweird {
                g,
                ell,
                gamma,
                codim2,
            } => {
                put("g", g.to_string());
                put("ell", ell.to_string());
                if let Some(gamma) = gamma {
                    put("gamma", gamma.to_string());
                }
                if *codim2 {
                    put("codim2", "true".into());
                }
            }
            Job::CurvesScan { q, ell } => {
                put("q", q.to_string());
                put("ell", ell.to_string());
            }
            Job::CurvesEnvelope { ell, gamma, q_max } => {
                put("ell", ell.to_string());
                put("gamma", gamma.to_string());
                put("q-max", q_max.to_string());
            }
        }
        p
    }

    /// Command-line arguments that reproduce this job.
    pub fn argv(&self) -> Vec<String> {
        record_argv(self.command(), &self.params())
    }

    fn record(&self) -> CensusRecord {
        let mut r = CensusRecord::new(self.command());
        r.params = self.params();
        r
    }

    pub fn run(&self) -> Result<CensusRecord> {
        let mut rec = self.record();
        match *self {
            Job::CensusExact {
                g,
                ell,
                gamma,
                all_gamma,
            } => census_exact(&mut rec, g, ell, gamma, all_gamma)?,
            Job::CensusSweep { g, ell_max } => census_sweep(&mut rec, g, ell_max)?,
            Job::BruteCount {
                g,
                ell,
                gamma,
                prop,
                budget,
            } => brute_count(&mut rec, g, ell, gamma, prop, budget)?,
            Job::BruteDelta {
                g,
                ell,
                gamma,
                budget,
            } => brute_delta(&mut rec, g, ell, gamma, budget)?,
            Job::Sample {
                g,
                ell,
                gamma,
                prop,
                n,
                seed,
            } => sample(&mut rec, g, ell, gamma, prop, n, seed)?,
            Job::CharpolyEnum {
                g,
                ell,
                gamma,
                prop,
                raw_gamma_one,
            } => charpoly_enum(&mut rec, g, ell, gamma, prop, policy(raw_gamma_one))?,
            Job::CharpolyCount {
                g,
                ell,
                gamma,
                prop,
                raw_gamma_one,
            } => charpoly_count(&mut rec, g, ell, gamma, prop, raw_gamma_one)?,
            Job::BoundsPsitow { g, ell, ref psi } => {
                need_g(g)?;
                let (lo, hi) = psitow_bounds(psi, g, field(ell)?)?;
                rec.ratio("lower", &lo, Provenance::Formula);
                rec.ratio("upper", &hi, Provenance::Formula);
            }
            Job::BoundsDelta { g, ell } => {
                let f = field(ell)?;
                let (lo, hi) = delta_bounds(g, f)?;
                rec.count("sp_order", &sp_order(g, f), Provenance::Formula);
                rec.ratio("lower", &lo, Provenance::Formula);
                rec.ratio("upper", &hi, Provenance::Formula);
            }
            Job::BoundsEigenweird {
                g,
                ell,
                gamma,
                codim2,
            } => eigenweird(&mut rec, g, ell, gamma, codim2)?,
            Job::CurvesScan { q, ell } => curves_scan(&mut rec, q, ell)?,
            Job::CurvesEnvelope { ell, gamma, q_max } => {
                curves_envelope(&mut rec, ell, gamma, q_max)?
            }
        }
        Ok(rec)
    }
}

/// `command` words followed by `--key value` pairs; `"true"` marks a
/// boolean flag.
pub fn record_argv(command: &str, params: &BTreeMap<String, String>) -> Vec<String> {
    let mut argv: Vec<String> = command.split(' ').map(String::from).collect();
    for (k, v) in params {
        argv.push(format!("--{k}"));
        if v != "true" {
            argv.push(v.clone());
        }
    }
    argv
}

fn census_exact(
    rec: &mut CensusRecord,
    g: usize,
    ell: u32,
    gamma: Option<u32>,
    all: bool,
) -> Result<()> {
    need_g(g)?;
    let f = field(ell)?;
    rec.count("sp_order", &sp_order(g, f), Provenance::Formula);
    if !all {
        let gamma =
            gamma.ok_or_else(|| Error::InvalidParameter("need --gamma or --all-gamma".into()))?;
        multiplier(f, gamma)?;
        let c = eigen_census(CensusParams::new(g, ell, gamma)?)?;
        for (r, s) in c.s_values.iter().enumerate() {
            rec.count(&format!("S_r{}", r + 1), s, Provenance::Formula);
        }
        rec.count("T", &c.t_value, Provenance::Formula);
        rec.ratio("proportion", &c.proportion, Provenance::Formula);
        rec.ratio("tau", &c.tau, Provenance::Formula);
        rec.ratio("deviation", &c.deviation, Provenance::Formula);
        if c.params.gamma.is_one() {
            rec.ratio("abvar_leading", &abvar_leading(f), Provenance::Formula);
        }
        return Ok(());
    }
    let censuses = (1..ell)
        .into_par_iter()
        .map(|gv| eigen_census(CensusParams::new(g, ell, gv)?))
        .collect::<Result<Vec<_>>>()?;
    // T does not depend on gamma once gamma != 1.
    let mut nontrivial = censuses.iter().filter(|c| !c.params.gamma.is_one());
    if let Some(first) = nontrivial.next() {
        if let Some(bad) = nontrivial.find(|c| c.t_value != first.t_value) {
            return Err(Error::Inconsistent(format!(
                "T differs between gamma = {} and gamma = {}",
                first.params.gamma.value(),
                bad.params.gamma.value()
            )));
        }
    }
    for c in &censuses {
        let gv = c.params.gamma.value();
        rec.count(&format!("T_gamma{gv}"), &c.t_value, Provenance::Formula);
        rec.ratio(
            &format!("proportion_gamma{gv}"),
            &c.proportion,
            Provenance::Formula,
        );
        rec.ratio(&format!("tau_gamma{gv}"), &c.tau, Provenance::Formula);
        rec.ratio(
            &format!("deviation_gamma{gv}"),
            &c.deviation,
            Provenance::Formula,
        );
    }
    Ok(())
}

fn census_sweep(rec: &mut CensusRecord, g: usize, ell_max: u32) -> Result<()> {
    need_g(g)?;
    let primes: Vec<u32> = (2..=ell_max).filter(|&l| is_prime(l.into())).collect();
    if primes.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "no primes up to {ell_max}"
        )));
    }
    type Row = (u32, BigRatio, BigRatio, Option<(BigRatio, BigRatio)>);
    let rows = primes
        .par_iter()
        .map(|&l| -> Result<Row> {
            let one = eigen_census(CensusParams::new(g, l, 1)?)?;
            let other = if l >= 3 {
                let f = field(l)?;
                let t = t_count(g, multiplier(f, 2)?, f)?;
                for gv in 3..l {
                    if t_count(g, multiplier(f, gv)?, f)? != t {
                        return Err(Error::Inconsistent(format!(
                            "T depends on gamma at l = {l}"
                        )));
                    }
                }
                let c = eigen_census(CensusParams::new(g, l, 2)?)?;
                Some((c.proportion, c.deviation))
            } else {
                None
            };
            Ok((l, one.proportion, one.deviation, other))
        })
        .collect::<Result<Vec<_>>>()?;
    let (mut fit_one, mut fit_other) = (0.0f64, 0.0f64);
    for (l, p1, d1, other) in &rows {
        rec.ratio(&format!("proportion_l{l}_gamma1"), p1, Provenance::Formula);
        rec.ratio(&format!("deviation_l{l}_gamma1"), d1, Provenance::Formula);
        fit_one = fit_one.max(as_f64(d1));
        if let Some((p, d)) = other {
            rec.ratio(
                &format!("proportion_l{l}_gamma_ne1"),
                p,
                Provenance::Formula,
            );
            rec.ratio(&format!("deviation_l{l}_gamma_ne1"), d, Provenance::Formula);
            fit_other = fit_other.max(as_f64(d));
        }
    }
    rec.measure("c_fit_gamma1", fit_one, Provenance::Formula);
    rec.measure("c_fit_gamma_ne1", fit_other, Provenance::Formula);
    Ok(())
}

fn brute_count(
    rec: &mut CensusRecord,
    g: usize,
    ell: u32,
    gamma: u32,
    prop: PropertyTag,
    budget: u64,
) -> Result<()> {
    need_g(g)?;
    let f = field(ell)?;
    let gm = multiplier(f, gamma)?;
    let hist = parallel::delta_histogram(g, f, gm, budget)?;
    let sp = sp_order(g, f);
    if hist.total() != sp {
        return Err(Error::Inconsistent(
            "histogram total differs from #Sp".into(),
        ));
    }
    let w = hist.count(prop, GammaOnePolicy::Empty);
    if prop == PropertyTag::E && w != t_count(g, gm, f)? {
        return Err(Error::Inconsistent(
            "enumerated (E) count differs from the recursion".into(),
        ));
    }
    rec.count("sp_order", &sp, Provenance::Formula);
    rec.count("W", &w, Provenance::Brute);
    rec.count(
        "distinct_charpolys",
        &whole(hist.len() as u64),
        Provenance::Brute,
    );
    rec.ratio("proportion", &ratio(&w, &sp), Provenance::Brute);
    Ok(())
}

fn brute_delta(rec: &mut CensusRecord, g: usize, ell: u32, gamma: u32, budget: u64) -> Result<()> {
    need_g(g)?;
    let f = field(ell)?;
    let gm = multiplier(f, gamma)?;
    let hist = parallel::delta_histogram(g, f, gm, budget)?;
    let (lo, hi) = delta_bounds(g, f)?;
    for (poly, n) in hist.iter() {
        let d = ratio(&whole(n), &BigUint::from(1u32));
        if d < lo || d > hi {
            return Err(Error::Inconsistent(format!(
                "Delta({poly}) = {n} outside its bounds"
            )));
        }
        rec.count(&format!("delta[{poly}]"), &whole(n), Provenance::Brute);
    }
    let total = hist.total();
    if total != sp_order(g, f) {
        return Err(Error::Inconsistent(
            "histogram total differs from #Sp".into(),
        ));
    }
    rec.count("total", &total, Provenance::Brute);
    rec.ratio("delta_lower", &lo, Provenance::Formula);
    rec.ratio("delta_upper", &hi, Provenance::Formula);
    Ok(())
}

fn sample(
    rec: &mut CensusRecord,
    g: usize,
    ell: u32,
    gamma: u32,
    prop: PropertyTag,
    n: u64,
    seed: u64,
) -> Result<()> {
    need_g(g)?;
    multiplier(field(ell)?, gamma)?;
    let params = CensusParams::new(g, ell, gamma)?;
    let report = parallel::montecarlo(params, prop, n, seed)?;
    rec.estimate(&format!("estimate_{prop}"), &report);
    if prop == PropertyTag::E {
        let exact = eigen_census(params)?.proportion;
        if report.stderr > 0.0 {
            let z = (report.estimate - as_f64(&exact)) / report.stderr;
            rec.measure("z_score", z, Provenance::Montecarlo);
        }
        rec.ratio("proportion", &exact, Provenance::Formula);
    }
    Ok(())
}

fn charpoly_enum(
    rec: &mut CensusRecord,
    g: usize,
    ell: u32,
    gamma: u32,
    prop: Option<PropertyTag>,
    pol: GammaOnePolicy,
) -> Result<()> {
    need_g(g)?;
    let f = field(ell)?;
    let gm = multiplier(f, gamma)?;
    let mut n = 0u64;
    for poly in xi_enumerate(g, gm, f) {
        if prop.map_or(true, |t| property_holds(&poly, gm, t, pol)) {
            rec.count(&format!("member[{poly}]"), &whole(1), Provenance::Formula);
            n += 1;
        }
    }
    rec.count("psi", &whole(n), Provenance::Formula);
    Ok(())
}

fn charpoly_count(
    rec: &mut CensusRecord,
    g: usize,
    ell: u32,
    gamma: u32,
    prop: PropertyTag,
    raw: bool,
) -> Result<()> {
    need_g(g)?;
    let f = field(ell)?;
    let gm = multiplier(f, gamma)?;
    let count = |t, p| parallel::psi_count(g, gm, f, t, p);
    let psi = count(prop, policy(raw));
    rec.count("psi", &psi, Provenance::Formula);
    rec.ratio(
        "psi_fraction",
        &ratio(&psi, &field_power(f, g)),
        Provenance::Formula,
    );
    for t in PropertyTag::ALL {
        rec.count(
            &format!("psi_{t}"),
            &count(t, GammaOnePolicy::Empty),
            Provenance::Formula,
        );
        if raw && matches!(t, PropertyTag::RLiteral | PropertyTag::RProof) {
            rec.count(
                &format!("psi_{t}_raw"),
                &count(t, GammaOnePolicy::Raw),
                Provenance::Formula,
            );
        }
    }
    Ok(())
}

fn eigenweird(
    rec: &mut CensusRecord,
    g: usize,
    ell: u32,
    gamma: Option<u32>,
    codim2: bool,
) -> Result<()> {
    need_g(g)?;
    let f = field(ell)?;
    if ell < 3 {
        return Err(Error::InvalidParameter("the (R) bound needs l >= 3".into()));
    }
    let gammas: Vec<u32> = match gamma {
        Some(1) => {
            return Err(Error::InvalidParameter(
                "the (R) bound needs gamma != 1".into(),
            ))
        }
        Some(gv) => vec![gv],
        None => (2..ell).collect(),
    };
    let mut worst = BigRatio::from_integer(0.into());
    for gv in gammas {
        let gm = multiplier(f, gv)?;
        let c = eigenweird_constant(g, gm, f)?;
        let psi = parallel::psi_count(g, gm, f, PropertyTag::RLiteral, GammaOnePolicy::Empty);
        rec.count(&format!("psi_R_gamma{gv}"), &psi, Provenance::Formula);
        rec.ratio(&format!("C_gamma{gv}"), &c, Provenance::Formula);
        if codim2 {
            rec.ratio(
                &format!("codim2_gamma{gv}"),
                &codim_two_constant(g, gm, f)?,
                Provenance::Formula,
            );
        }
        if c > worst {
            worst = c;
        }
    }
    rec.ratio("C_max", &worst, Provenance::Formula);
    Ok(())
}

fn curves_scan(rec: &mut CensusRecord, q: u32, ell: u32) -> Result<()> {
    let report = parallel::scan(q, ell)?;
    rec.count(
        "gamma",
        &whole(report.gamma.value().into()),
        Provenance::Scan,
    );
    rec.count("curves", &whole(report.curves), Provenance::Scan);
    rec.count("singular", &whole(report.singular), Provenance::Scan);
    for tag in SCAN_TAGS {
        let row = report.row(tag);
        rec.count(&format!("hits_{tag}"), &whole(row.hits), Provenance::Scan);
        rec.ratio(
            &format!("frequency_{tag}"),
            &row.frequency,
            Provenance::Scan,
        );
        rec.ratio(&format!("target_{tag}"), &row.target, Provenance::Brute);
        rec.ratio(
            &format!("deviation_{tag}"),
            &row.deviation,
            Provenance::Scan,
        );
        rec.measure(
            &format!("scaled_deviation_{tag}"),
            report.scaled_deviation(tag),
            Provenance::Scan,
        );
    }
    Ok(())
}

fn curves_envelope(rec: &mut CensusRecord, ell: u32, gamma: u32, q_max: u32) -> Result<()> {
    let f = field(ell)?;
    multiplier(f, gamma)?;
    let qs = primes_in_class(ell, gamma, q_max);
    if qs.is_empty() {
        return Err(Error::InvalidParameter(format!(
            "no primes q <= {q_max} with q = {gamma} mod {ell}"
        )));
    }
    let fit = parallel::envelope(ell, gamma, &qs)?;
    for p in &fit.points {
        rec.measure(
            &format!("deviation_E_q{}", p.q),
            p.deviation,
            Provenance::Scan,
        );
        rec.measure(
            &format!("scaled_deviation_E_q{}", p.q),
            p.scaled,
            Provenance::Scan,
        );
    }
    rec.count("scans", &whole(fit.points.len() as u64), Provenance::Scan);
    rec.measure("constant", fit.constant, Provenance::Scan);
    rec.measure("first_half_max", fit.first_half_max(), Provenance::Scan);
    rec.measure("second_half_max", fit.second_half_max(), Provenance::Scan);
    rec.count(
        "bounded_trend",
        &whole(fit.bounded_trend().into()),
        Provenance::Scan,
    );
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use gsp_census_core::brute::DEFAULT_BUDGET;

    #[test]
    fn census_exact_example() {
        let r = Job::CensusExact {
            g: 2,
            ell: 3,
            gamma: Some(2),
            all_gamma: false,
        }
        .run()
        .unwrap();
        assert_eq!(r.exact_counts["T"], "22680");
        assert_eq!(
            r.get_ratio("proportion").unwrap(),
            BigRatio::new(7.into(), 16.into())
        );
        assert_eq!(r.provenance["T"], Provenance::Formula);
    }

    #[test]
    fn psitow_example() {
        let r = Job::BoundsPsitow {
            g: 1,
            ell: 3,
            psi: whole(1),
        }
        .run()
        .unwrap();
        assert_eq!(
            r.get_ratio("lower").unwrap(),
            BigRatio::new(9.into(), 64.into())
        );
        assert_eq!(
            r.get_ratio("upper").unwrap(),
            BigRatio::new(9.into(), 8.into())
        );
    }

    #[test]
    fn all_gamma_checks_independence() {
        let r = Job::CensusExact {
            g: 3,
            ell: 7,
            gamma: None,
            all_gamma: true,
        }
        .run()
        .unwrap();
        let ts: Vec<_> = (2..7)
            .map(|gv| r.exact_counts[&format!("T_gamma{gv}")].clone())
            .collect();
        assert!(ts.windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn brute_count_agrees_with_formula() {
        let r = Job::BruteCount {
            g: 2,
            ell: 3,
            gamma: 2,
            prop: PropertyTag::E,
            budget: DEFAULT_BUDGET,
        }
        .run()
        .unwrap();
        assert_eq!(r.exact_counts["W"], "22680");
        let n = Job::BruteCount {
            g: 1,
            ell: 3,
            gamma: 2,
            prop: PropertyTag::N,
            budget: DEFAULT_BUDGET,
        }
        .run()
        .unwrap();
        assert_eq!(n.exact_counts["W"], "12");
    }

    #[test]
    fn brute_over_budget_is_refused() {
        let e = Job::BruteCount {
            g: 2,
            ell: 3,
            gamma: 2,
            prop: PropertyTag::E,
            budget: 1000,
        }
        .run()
        .unwrap_err();
        assert!(matches!(e, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn delta_histogram_record() {
        let r = Job::BruteDelta {
            g: 1,
            ell: 3,
            gamma: 2,
            budget: DEFAULT_BUDGET,
        }
        .run()
        .unwrap();
        assert_eq!(r.exact_counts["total"], "24");
        assert_eq!(
            r.exact_counts
                .keys()
                .filter(|k| k.starts_with("delta["))
                .count(),
            3
        );
    }

    #[test]
    fn charpoly_records() {
        let e = Job::CharpolyEnum {
            g: 1,
            ell: 3,
            gamma: 2,
            prop: None,
            raw_gamma_one: false,
        }
        .run()
        .unwrap();
        assert_eq!(e.exact_counts["psi"], "3");
        assert!(e.exact_counts.contains_key("member[x^2 + x + 2]"));
        let c = Job::CharpolyCount {
            g: 1,
            ell: 3,
            gamma: 1,
            prop: PropertyTag::RLiteral,
            raw_gamma_one: true,
        }
        .run()
        .unwrap();
        assert_eq!(c.exact_counts["psi_R"], "0");
        assert_eq!(c.exact_counts["psi_R_raw"], "1");
    }

    #[test]
    fn argv_reproduces_params() {
        let job = Job::CensusExact {
            g: 2,
            ell: 3,
            gamma: None,
            all_gamma: true,
        };
        assert_eq!(
            job.argv(),
            ["census", "exact", "--all-gamma", "--ell", "3", "--g", "2"]
        );
    }
}
