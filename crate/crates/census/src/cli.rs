//! Argument parsing, cache handling and output.
//!
//! Exit codes: 0 success, 2 usage error, 3 budget refusal, 4 internal
//! consistency failure. Diagnostics go to stderr; stdout carries exactly one
//! JSON document or one CSV table.

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use gsp_census_core::brute::DEFAULT_BUDGET;
use gsp_census_core::{Error, PropertyTag};
use num_bigint::BigUint;

use crate::cache::{Cache, CACHE_ENV};
use crate::commands::Job;
use crate::parallel::with_threads;
use crate::record::CensusRecord;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_INCONSISTENT: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "gsp-census",
    version,
    about = "Census of characteristic polynomials in GSp_2g(F_l)"
)]
struct Cli {
    /// Emit a flat CSV table instead of JSON.
    #[arg(long, global = true)]
    csv: bool,

    /// Neither read nor write the result cache.
    #[arg(long, global = true)]
    no_cache: bool,

    /// Result cache directory.
    #[arg(long, global = true, env = CACHE_ENV)]
    cache_dir: Option<PathBuf>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    threads: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Eigenvalue-one counts from the closed formulas.
    #[command(subcommand)]
    Census(CensusCmd),
    /// Exhaustive enumeration of a coset.
    #[command(subcommand)]
    Brute(BruteCmd),
    /// Monte Carlo estimate from uniform samples.
    Sample(SampleArgs),
    /// The space of admissible characteristic polynomials.
    #[command(subcommand)]
    Charpoly(CharpolyCmd),
    /// Bounds relating polynomial counts to element counts.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// Frobenius statistics of elliptic curves.
    #[command(subcommand)]
    Curves(CurvesCmd),
}

#[derive(Debug, Args)]
struct Gl {
    #[arg(long)]
    g: usize,
    #[arg(long)]
    ell: u32,
}

#[derive(Debug, Args)]
struct Glg {
    #[arg(long)]
    g: usize,
    #[arg(long)]
    ell: u32,
    #[arg(long)]
    gamma: u32,
}

#[derive(Debug, Subcommand)]
enum CensusCmd {
    Exact {
        #[command(flatten)]
        gl: Gl,
        #[arg(long, required_unless_present = "all_gamma")]
        gamma: Option<u32>,
        /// Every gamma in 1..l, checking that T is the same for all gamma != 1.
        #[arg(long)]
        all_gamma: bool,
    },
    Sweep {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        ell_max: u32,
    },
}

#[derive(Debug, Subcommand)]
enum BruteCmd {
    Count {
        #[command(flatten)]
        p: Glg,
        #[arg(long, value_parser = parse_tag)]
        prop: PropertyTag,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    Delta {
        #[command(flatten)]
        p: Glg,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[command(flatten)]
    p: Glg,
    #[arg(long, value_parser = parse_tag)]
    prop: PropertyTag,
    #[arg(long)]
    n: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum CharpolyCmd {
    Enum {
        #[command(flatten)]
        p: Glg,
        #[arg(long, value_parser = parse_tag)]
        prop: Option<PropertyTag>,
        /// Evaluate (R) literally in the gamma = 1 coset (diagnostic).
        #[arg(long)]
        raw_gamma_one: bool,
    },
    Count {
        #[command(flatten)]
        p: Glg,
        #[arg(long, value_parser = parse_tag)]
        prop: PropertyTag,
        /// Evaluate (R) literally in the gamma = 1 coset (diagnostic).
        #[arg(long)]
        raw_gamma_one: bool,
    },
}

#[derive(Debug, Subcommand)]
enum BoundsCmd {
    Psitow {
        #[command(flatten)]
        gl: Gl,
        #[arg(long)]
        psi: BigUint,
    },
    Delta {
        #[command(flatten)]
        gl: Gl,
    },
    Eigenweird {
        #[command(flatten)]
        gl: Gl,
        /// One multiplier instead of all gamma != 1.
        #[arg(long)]
        gamma: Option<u32>,
        /// Also report the codimension-two constant for (N) or (R).
        #[arg(long)]
        codim2: bool,
    },
}

#[derive(Debug, Subcommand)]
enum CurvesCmd {
    Scan {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        ell: u32,
    },
    Envelope {
        #[arg(long)]
        ell: u32,
        #[arg(long)]
        gamma: u32,
        #[arg(long, default_value_t = 499)]
        q_max: u32,
    },
}

fn parse_tag(s: &str) -> Result<PropertyTag, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn job(cmd: Command) -> Job {
    match cmd {
        Command::Census(CensusCmd::Exact {
            gl,
            gamma,
            all_gamma,
        }) => Job::CensusExact {
            g: gl.g,
            ell: gl.ell,
            gamma,
            all_gamma,
        },
        Command::Census(CensusCmd::Sweep { g, ell_max }) => Job::CensusSweep { g, ell_max },
        Command::Brute(BruteCmd::Count { p, prop, budget }) => Job::BruteCount {
            g: p.g,
            ell: p.ell,
            gamma: p.gamma,
            prop,
            budget,
        },
        Command::Brute(BruteCmd::Delta { p, budget }) => Job::BruteDelta {
            g: p.g,
            ell: p.ell,
            gamma: p.gamma,
            budget,
        },
        Command::Sample(SampleArgs { p, prop, n, seed }) => Job::Sample {
            g: p.g,
            ell: p.ell,
            gamma: p.gamma,
            prop,
            n,
            seed,
        },
        Command::Charpoly(CharpolyCmd::Enum {
            p,
            prop,
            raw_gamma_one,
        }) => Job::CharpolyEnum {
            g: p.g,
            ell: p.ell,
            gamma: p.gamma,
            prop,
            raw_gamma_one,
        },
        Command::Charpoly(CharpolyCmd::Count {
            p,
            prop,
            raw_gamma_one,
        }) => Job::CharpolyCount {
            g: p.g,
            ell: p.ell,
            gamma: p.gamma,
            prop,
            raw_gamma_one,
        },
        Command::Bounds(BoundsCmd::Psitow { gl, psi }) => Job::BoundsPsitow {
            g: gl.g,
            ell: gl.ell,
            psi,
        },
        Command::Bounds(BoundsCmd::Delta { gl }) => Job::BoundsDelta {
            g: gl.g,
            ell: gl.ell,
        },
        Command::Bounds(BoundsCmd::Eigenweird { gl, gamma, codim2 }) => Job::BoundsEigenweird {
            g: gl.g,
            ell: gl.ell,
            gamma,
            codim2,
        },
        Command::Curves(CurvesCmd::Scan { q, ell }) => Job::CurvesScan { q, ell },
        Command::Curves(CurvesCmd::Envelope { ell, gamma, q_max }) => {
            Job::CurvesEnvelope { ell, gamma, q_max }
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        Error::Inconsistent(_) => EXIT_INCONSISTENT,
        _ => EXIT_USAGE,
    }
}

fn emit(record: &CensusRecord, csv: bool, out: &mut impl Write) -> io::Result<()> {
    if csv {
        record.write_csv(&mut *out).map_err(io::Error::other)
    } else {
        writeln!(out, "{}", record.to_json())
    }
}

/// Parses `argv` (including the program name), runs the command and writes
/// the record to `out`. Returns the process exit code.
pub fn run_with<I, T>(argv: I, out: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let job = job(cli.command);
    let cache = cli.cache_dir.filter(|_| !cli.no_cache).map(Cache::new);
    let cached = cache
        .as_ref()
        .and_then(|c| c.lookup(job.command(), &job.params()));
    let record = match cached {
        Some(r) => r,
        None => match with_threads(cli.threads.map(|n| n as usize), || job.run()) {
            Ok(r) => {
                if let Some(c) = &cache {
                    if let Err(e) = c.store(&r) {
                        eprintln!("warning: could not write cache entry: {e}");
                    }
                }
                r
            }
            Err(e) => {
                eprintln!("error: {e}");
                return exit_code(&e);
            }
        },
    };
    match emit(&record, cli.csv, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: writing output: {e}");
            1
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut io::stdout().lock())
}
