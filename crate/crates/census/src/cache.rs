//! On-disk record cache.
//!
//! Each record lives in `<dir>/<sha256 of command and params>.json`. Writes
//! go to a temporary file in the same directory that is then renamed over
//! the target, so readers see either the old file or the new one, never a
//! torn write. When several processes store the same key, the last rename
//! wins and every intermediate state is a complete record.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::record::{CensusRecord, SCHEMA_VERSION};

/// Environment variable naming the default cache directory.
pub const CACHE_ENV: &str = "GSP_CENSUS_CACHE";

/// Canonical cache key of a command and its parameters.
pub fn cache_key(command: &str, params: &BTreeMap<String, String>) -> String {
    let canonical = serde_json::to_string(&(command, params)).expect("string maps serialize");
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
    schema_version: u32,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache {
            dir: dir.into(),
            schema_version: SCHEMA_VERSION,
        }
    }

    /// A cache that only accepts records of the given schema version.
    pub fn with_schema_version(mut self, v: u32) -> Self {
        self.schema_version = v;
        self
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, command: &str, params: &BTreeMap<String, String>) -> PathBuf {
        self.dir
            .join(format!("{}.json", cache_key(command, params)))
    }

    /// The stored record for exactly this command and these parameters.
    /// Unreadable or corrupt entries count as misses and are reported on
    /// stderr.
    pub fn lookup(&self, command: &str, params: &BTreeMap<String, String>) -> Option<CensusRecord> {
        let path = self.path_for(command, params);
        let text = match fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return None,
            Err(e) => {
                eprintln!(
                    "warning: ignoring unreadable cache entry {}: {e}",
                    path.display()
                );
                return None;
            }
        };
        let record = match CensusRecord::from_json(&text) {
            Ok(r) => r,
            Err(e) => {
                eprintln!(
                    "warning: ignoring corrupt cache entry {}: {e}",
                    path.display()
                );
                return None;
            }
        };
        let matches = record.schema_version == self.schema_version
            && record.command == command
            && &record.params == params;
        matches.then_some(record)
    }

    pub fn store(&self, record: &CensusRecord) -> io::Result<PathBuf> {
        fs::create_dir_all(&self.dir)?;
        let path = self.path_for(&record.command, &record.params);
        let mut tmp = tempfile::Builder::new()
            .prefix(".tmp-")
            .suffix(".json")
            .tempfile_in(&self.dir)?;
        tmp.write_all(record.to_json().as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(&path).map_err(|e| e.error)?;
        Ok(path)
    }
}
