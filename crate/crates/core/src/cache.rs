//! On-disk cache of `Q_n`, one JSON file per `n`.
//!
//! The directory comes from `QETUDE_CACHE`; unset means no caching. Files
//! are written to a temporary name and renamed into place. A file that does
//! not parse, or holds a different `n`, is reported, recomputed and
//! overwritten.

use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactalg::json::{xqpoly_from_json, xqpoly_to_json};
use crate::exactalg::XQPoly;
use crate::lehmer::det_recurrence;

pub const CACHE_ENV: &str = "QETUDE_CACHE";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Cache,
    Computed,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CachedDet {
    pub value: XQPoly,
    pub source: Source,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, Default)]
pub struct DetCache {
    dir: Option<PathBuf>,
}

impl DetCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        DetCache { dir }
    }

    pub fn disabled() -> Self {
        DetCache { dir: None }
    }

    /// Uses `$QETUDE_CACHE` when set and non-empty.
    pub fn from_env() -> Self {
        DetCache::new(std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from))
    }

    pub fn dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    pub fn path_for(&self, n: u32) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("det-{n}.json")))
    }

    /// `Ok(None)` on a miss or when disabled; `Err` describes a corrupt file.
    pub fn load(&self, n: u32) -> Result<Option<XQPoly>> {
        let Some(path) = self.path_for(n) else { return Ok(None) };
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(e.into()),
        };
        let corrupt = |why: String| Error::Parse(format!("cache file {}: {why}", path.display()));
        let v: Value = serde_json::from_str(&text).map_err(|e| corrupt(e.to_string()))?;
        if v.get("n").and_then(Value::as_u64) != Some(u64::from(n)) {
            return Err(corrupt(format!("does not hold n={n}")));
        }
        let value = xqpoly_from_json(v.get("value").ok_or_else(|| corrupt("missing value".into()))?)
            .map_err(|e| corrupt(e.to_string()))?;
        Ok(Some(value))
    }

    pub fn store(&self, n: u32, value: &XQPoly) -> Result<()> {
        let (Some(dir), Some(path)) = (self.dir.as_ref(), self.path_for(n)) else { return Ok(()) };
        std::fs::create_dir_all(dir)?;
        let tmp = tempfile::NamedTempFile::new_in(dir)?;
        let body = serde_json::to_string(&json!({"n": n, "value": xqpoly_to_json(value)})).expect("JSON value");
        std::fs::write(tmp.path(), body)?;
        tmp.persist(&path).map_err(|e| Error::Io(e.to_string()))?;
        Ok(())
    }

    /// `Q_n` from the cache, or computed (and stored) on a miss or a corrupt entry.
    pub fn det(&self, n: u32) -> Result<CachedDet> {
        let mut warnings = Vec::new();
        match self.load(n) {
            Ok(Some(value)) => return Ok(CachedDet { value, source: Source::Cache, warnings }),
            Ok(None) => {}
            Err(e) => warnings.push(format!("ignoring corrupt cache entry ({e}); recomputing")),
        }
        let value = det_recurrence(n)?;
        if let Err(e) = self.store(n, &value) {
            warnings.push(format!("could not write cache entry for n={n}: {e}"));
        }
        Ok(CachedDet { value, source: Source::Computed, warnings })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DetCache::new(Some(dir.path().to_path_buf()));
        let first = cache.det(30).unwrap();
        assert_eq!(first.source, Source::Computed);
        let second = cache.det(30).unwrap();
        assert_eq!(second.source, Source::Cache);
        assert_eq!(second.value, det_recurrence(30).unwrap());
        assert!(second.warnings.is_empty());
    }

    #[test]
    fn disabled_recomputes() {
        let cache = DetCache::disabled();
        let d = cache.det(12).unwrap();
        assert_eq!(d.source, Source::Computed);
        assert_eq!(d.value, det_recurrence(12).unwrap());
        assert!(cache.path_for(12).is_none());
    }

    #[test]
    fn truncated_file_is_recomputed() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DetCache::new(Some(dir.path().to_path_buf()));
        cache.det(9).unwrap();
        let path = cache.path_for(9).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        std::fs::write(&path, &text[..text.len() / 2]).unwrap();
        let d = cache.det(9).unwrap();
        assert_eq!(d.source, Source::Computed);
        assert_eq!(d.warnings.len(), 1);
        assert!(d.warnings[0].contains("corrupt"));
        assert_eq!(d.value, det_recurrence(9).unwrap());
        assert_eq!(cache.det(9).unwrap().source, Source::Cache);
    }

    #[test]
    fn wrong_key_is_corrupt() {
        let dir = tempfile::tempdir().unwrap();
        let cache = DetCache::new(Some(dir.path().to_path_buf()));
        cache.store(5, &det_recurrence(5).unwrap()).unwrap();
        std::fs::rename(cache.path_for(5).unwrap(), cache.path_for(6).unwrap()).unwrap();
        assert!(cache.load(6).is_err());
        assert_eq!(cache.det(6).unwrap().value, det_recurrence(6).unwrap());
    }
}
