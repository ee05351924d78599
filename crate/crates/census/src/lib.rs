//! Command line, record formats and result cache for the
//! `gsp-census-core` engines.
//!
//! * [`record`]: the JSON/CSV [`CensusRecord`](record::CensusRecord).
//! * [`cache`]: content-addressed record cache with atomic writes.
//! * [`parallel`]: rayon drivers whose results do not depend on the thread
//!   count.
//! * [`commands`]: one record-producing job per subcommand.
//! * [`cli`]: argument parsing and exit codes.

#![forbid(unsafe_code)]

pub mod cache;
pub mod cli;
pub mod commands;
pub mod parallel;
pub mod record;

pub use cache::Cache;
pub use commands::Job;
pub use record::{CensusRecord, Provenance, SCHEMA_VERSION};
