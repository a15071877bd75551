//! Content-addressed verdict cache.
//!
//! Keys hash the group's element set and generators, the σ string, the
//! property, the strategy set and the engine version. Entries are written to
//! a temporary file and renamed into place.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use sigmalat_core::Group;

use crate::error::{CliError, Result};

pub const CACHE_ENV: &str = "SIGMALAT_CACHE_DIR";
pub const ENGINE_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "+engine.1");

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachedVerdict {
    pub verdict: Option<bool>,
    pub witness: Option<Vec<String>>,
    pub details: BTreeMap<String, bool>,
}

#[derive(Debug, Clone, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    pub fn at(dir: impl Into<PathBuf>) -> Self {
        Cache {
            dir: Some(dir.into()),
        }
    }

    /// The directory named by `SIGMALAT_CACHE_DIR`, if set and non-empty.
    pub fn from_env() -> Self {
        match std::env::var_os(CACHE_ENV) {
            Some(d) if !d.is_empty() => Cache::at(d),
            _ => Cache::disabled(),
        }
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn path_for(&self, key: &str) -> Option<PathBuf> {
        self.dir
            .as_ref()
            .map(|d| d.join(&key[..2]).join(format!("{key}.json")))
    }

    pub fn get(&self, key: &str) -> Option<CachedVerdict> {
        let path = self.path_for(key)?;
        let text = std::fs::read_to_string(path).ok()?;
        serde_json::from_str(&text).ok()
    }

    pub fn put(&self, key: &str, value: &CachedVerdict) -> Result<()> {
        let Some(path) = self.path_for(key) else {
            return Ok(());
        };
        let parent = path.parent().expect("sharded path");
        std::fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
        let mut tmp =
            tempfile::NamedTempFile::new_in(parent).map_err(|e| CliError::io(parent, e))?;
        let body = serde_json::to_vec(value).expect("cache entries serialize");
        tmp.write_all(&body)
            .map_err(|e| CliError::io(tmp.path(), e))?;
        tmp.persist(&path)
            .map_err(|e| CliError::io(&path, e.error))?;
        Ok(())
    }
}

/// Hex SHA-256 of everything that can change a verdict.
pub fn cache_key(g: &Group, sigma: &str, property: &str, strategies: &str) -> String {
    let mut h = Sha256::new();
    h.update(ENGINE_VERSION.as_bytes());
    h.update([0]);
    h.update((g.degree() as u64).to_le_bytes());
    for p in g.elements() {
        for &i in p.images() {
            h.update(i.to_le_bytes());
        }
    }
    h.update([1]);
    for &x in g.generators() {
        h.update(x.to_le_bytes());
    }
    for part in [sigma, property, strategies] {
        h.update([0]);
        h.update(part.as_bytes());
    }
    let mut out = String::with_capacity(64);
    for b in h.finalize() {
        write!(out, "{b:02x}").unwrap();
    }
    out
}
