//! Content-addressed on-disk cache of reduced Gröbner bases.
//!
//! The directory comes from `GODEAUX_CACHE_DIR`. Each entry is a JSON file
//! named by the sha256 of its key material (ring, order, generators). Writes
//! go to a temporary file that is then renamed into place.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

pub const CACHE_ENV: &str = "GODEAUX_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub ring: String,
    pub order: String,
    pub generators: Vec<String>,
    pub basis: Vec<String>,
}

impl CacheEntry {
    pub fn key(&self) -> String {
        cache_key(&self.ring, &self.order, &self.generators)
    }
}

pub fn cache_key(ring: &str, order: &str, generators: &[String]) -> String {
    let mut h = Sha256::new();
    h.update(ring.as_bytes());
    h.update(b"\n");
    h.update(order.as_bytes());
    for g in generators {
        h.update(b"\n");
        h.update(g.as_bytes());
    }
    hex::encode(h.finalize())
}

#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GcReport {
    pub kept: usize,
    pub removed: usize,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        Cache { dir: dir.into() }
    }

    pub fn from_env() -> Option<Self> {
        std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(Cache::new)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path_for(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Looks up an entry; entries whose content does not match their name are
    /// ignored.
    pub fn get(&self, ring: &str, order: &str, generators: &[String]) -> Option<CacheEntry> {
        let key = cache_key(ring, order, generators);
        let text = fs::read_to_string(self.path_for(&key)).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        (entry.key() == key).then_some(entry)
    }

    pub fn put(&self, entry: &CacheEntry) -> Result<()> {
        fs::create_dir_all(&self.dir).map_err(|e| Error::io(&self.dir, e))?;
        let target = self.path_for(&entry.key());
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(|e| Error::io(&self.dir, e))?;
        let body = serde_json::to_string_pretty(entry)?;
        tmp.write_all(body.as_bytes()).map_err(|e| Error::io(tmp.path(), e))?;
        tmp.as_file().sync_all().map_err(|e| Error::io(tmp.path(), e))?;
        tmp.persist(&target).map_err(|e| Error::io(&target, e.error))?;
        Ok(())
    }

    /// Removes entries that fail to parse or whose hash does not match the
    /// file name, plus stray temporary files.
    pub fn gc(&self) -> Result<GcReport> {
        let mut report = GcReport::default();
        let rd = match fs::read_dir(&self.dir) {
            Ok(rd) => rd,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(report),
            Err(e) => return Err(Error::io(&self.dir, e)),
        };
        let mut paths: Vec<PathBuf> = rd.filter_map(|e| e.ok().map(|e| e.path())).collect();
        paths.sort();
        for path in paths {
            if !path.is_file() {
                continue;
            }
            let name = path.file_name().and_then(|n| n.to_str()).unwrap_or_default().to_string();
            let valid = name
                .strip_suffix(".json")
                .and_then(|stem| {
                    let text = fs::read_to_string(&path).ok()?;
                    let entry: CacheEntry = serde_json::from_str(&text).ok()?;
                    Some(entry.key() == stem)
                })
                .unwrap_or(false);
            if valid {
                report.kept += 1;
            } else {
                fs::remove_file(&path).map_err(|e| Error::io(&path, e))?;
                log::info!("removed invalid cache entry {}", path.display());
                report.removed += 1;
            }
        }
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry() -> CacheEntry {
        CacheEntry {
            ring: "Q(zeta5)[x:1]".into(),
            order: "grevlex".into(),
            generators: vec!["(1, 0, 0, 0)*x^2".into()],
            basis: vec!["(1, 0, 0, 0)*x^2".into()],
        }
    }

    #[test]
    fn put_get_and_gc() {
        let dir = tempfile::tempdir().unwrap();
        let c = Cache::new(dir.path());
        let e = entry();
        c.put(&e).unwrap();
        assert_eq!(c.get(&e.ring, &e.order, &e.generators), Some(e.clone()));
        // Corrupt a copy under the wrong name.
        fs::write(dir.path().join("deadbeef.json"), serde_json::to_string(&e).unwrap()).unwrap();
        fs::write(dir.path().join("junk.json"), "not json").unwrap();
        let r = c.gc().unwrap();
        assert_eq!(r, GcReport { kept: 1, removed: 2 });
    }

    #[test]
    fn key_depends_on_every_part() {
        let e = entry();
        let mut f = e.clone();
        f.order = "lex".into();
        assert_ne!(e.key(), f.key());
        let mut g = e.clone();
        g.generators.push("x".into());
        assert_ne!(e.key(), g.key());
    }
}
