//! The persisted unit of output.
//!
//! A [`CensusRecord`] names the command and parameters that produced it and
//! carries every exact quantity as a decimal string, so that counts beyond
//! 64 bits survive JSON untouched. Floating point appears only in Monte
//! Carlo estimates and fitted constants.

use std::collections::BTreeMap;
use std::io::Write;
use std::time::{SystemTime, UNIX_EPOCH};

use gsp_census_core::brute::SampleReport;
use gsp_census_core::{BigCount, BigRatio};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

/// Bumped whenever the meaning or layout of a record changes; cached records
/// with another version are ignored.
pub const SCHEMA_VERSION: u32 = 1;

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Where a quantity came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Formula,
    Brute,
    Montecarlo,
    Scan,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::Formula => "formula",
            Provenance::Brute => "brute",
            Provenance::Montecarlo => "montecarlo",
            Provenance::Scan => "scan",
        }
    }
}

/// A reduced fraction as two decimal strings; `den` is positive.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactRatio {
    pub num: String,
    pub den: String,
}

impl ExactRatio {
    pub fn from_ratio(r: &BigRatio) -> Self {
        ExactRatio {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }

    /// Parses back into a reduced ratio; `None` on malformed input.
    pub fn to_ratio(&self) -> Option<BigRatio> {
        let num: BigInt = self.num.parse().ok()?;
        let den: BigInt = self.den.parse().ok()?;
        if den <= BigInt::from(0) {
            return None;
        }
        Some(BigRatio::new(num, den))
    }
}

/// Projection of a Monte Carlo run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub name: String,
    pub g: usize,
    pub ell: u32,
    pub gamma: u32,
    pub tag: String,
    pub n_samples: u64,
    pub hits: u64,
    pub estimate: f64,
    pub stderr: f64,
    pub seed: u64,
}

impl Estimate {
    pub fn from_report(name: &str, r: &SampleReport) -> Self {
        Estimate {
            name: name.to_owned(),
            g: r.params.g,
            ell: r.params.ell(),
            gamma: r.params.gamma.value(),
            tag: r.tag.to_string(),
            n_samples: r.n_samples,
            hits: r.hits,
            estimate: r.estimate,
            stderr: r.stderr,
            seed: r.seed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub schema_version: u32,
    pub command: String,
    pub params: BTreeMap<String, String>,
    #[serde(default)]
    pub exact_counts: BTreeMap<String, String>,
    #[serde(default)]
    pub exact_ratios: BTreeMap<String, ExactRatio>,
    #[serde(default)]
    pub estimates: Vec<Estimate>,
    /// Fitted constants and other floating-point diagnostics.
    #[serde(default)]
    pub measurements: BTreeMap<String, f64>,
    pub provenance: BTreeMap<String, Provenance>,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub tool_version: String,
}

impl CensusRecord {
    pub fn new(command: &str) -> Self {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        CensusRecord {
            schema_version: SCHEMA_VERSION,
            command: command.to_owned(),
            params: BTreeMap::new(),
            exact_counts: BTreeMap::new(),
            exact_ratios: BTreeMap::new(),
            estimates: Vec::new(),
            measurements: BTreeMap::new(),
            provenance: BTreeMap::new(),
            timestamp,
            tool_version: TOOL_VERSION.to_owned(),
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_owned(), value.to_string());
        self
    }

    pub fn count(&mut self, name: &str, value: &BigCount, prov: Provenance) {
        self.exact_counts.insert(name.to_owned(), value.to_string());
        self.provenance.insert(name.to_owned(), prov);
    }

    pub fn ratio(&mut self, name: &str, value: &BigRatio, prov: Provenance) {
        self.exact_ratios
            .insert(name.to_owned(), ExactRatio::from_ratio(value));
        self.provenance.insert(name.to_owned(), prov);
    }

    pub fn measure(&mut self, name: &str, value: f64, prov: Provenance) {
        self.measurements.insert(name.to_owned(), value);
        self.provenance.insert(name.to_owned(), prov);
    }

    pub fn estimate(&mut self, name: &str, report: &SampleReport) {
        self.estimates.push(Estimate::from_report(name, report));
        self.provenance
            .insert(name.to_owned(), Provenance::Montecarlo);
    }

    pub fn get_count(&self, name: &str) -> Option<BigCount> {
        self.exact_counts.get(name)?.parse().ok()
    }

    pub fn get_ratio(&self, name: &str) -> Option<BigRatio> {
        self.exact_ratios.get(name)?.to_ratio()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records always serialize")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// Flat table: one row per named quantity, with columns
    /// `command, <params...>, name, num, den, provenance`.
    ///
    /// Counts have `den = 1`; estimates are `hits / n_samples`; measurements
    /// are decimal and leave `den` empty.
    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["command".to_owned()];
        header.extend(self.params.keys().cloned());
        header.extend(["name", "num", "den", "provenance"].map(String::from));
        w.write_record(&header)?;
        let prefix: Vec<String> = std::iter::once(self.command.clone())
            .chain(self.params.values().cloned())
            .collect();
        let prov = |name: &str| {
            self.provenance
                .get(name)
                .map_or("", |p| p.as_str())
                .to_owned()
        };
        let mut row = |name: &str, num: String, den: String| -> csv::Result<()> {
            let mut r = prefix.clone();
            r.extend([name.to_owned(), num, den, prov(name)]);
            w.write_record(&r)
        };
        for (name, v) in &self.exact_counts {
            row(name, v.clone(), "1".to_owned())?;
        }
        for (name, v) in &self.exact_ratios {
            row(name, v.num.clone(), v.den.clone())?;
        }
        for e in &self.estimates {
            row(&e.name, e.hits.to_string(), e.n_samples.to_string())?;
        }
        for (name, v) in &self.measurements {
            row(name, v.to_string(), String::new())?;
        }
        w.flush()?;
        Ok(())
    }
}
