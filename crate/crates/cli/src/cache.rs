//! Content-addressed store of dimension reports.
//!
//! Key: SHA-256 of a canonical JSON description of the query. Entries are
//! written to a temporary file and renamed into place, so readers never see
//! a partial file and concurrent writers of one key race harmlessly (both
//! write identical bytes).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

use fatpoints_core::linsys::{system_dim, DimOptions, DimOracle, FatPointScheme, LinearSystemReport};
use fatpoints_core::{Error, Result};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::output::SCHEMA;

#[derive(Serialize)]
struct Key<'a> {
    schema: &'a str,
    field: String,
    /// (point, multiplicity), zero multiplicities dropped, sorted.
    points: Vec<([String; 3], u32)>,
    degree: u32,
    strategy: String,
    seed: u64,
    kernel: bool,
}

pub fn cache_key(scheme: &FatPointScheme, d: u32, opts: &DimOptions) -> String {
    let mut points: Vec<([String; 3], u32)> = scheme
        .points()
        .iter()
        .zip(scheme.mults())
        .filter(|(_, &m)| m > 0)
        .map(|(p, &m)| (p.coords().clone().map(|c| c.to_string()), m))
        .collect();
    points.sort();
    let key = Key {
        schema: SCHEMA,
        field: scheme.field().to_string(),
        points,
        degree: d,
        strategy: opts.strategy.to_string(),
        seed: opts.seed,
        kernel: opts.kernel,
    };
    let bytes = serde_json::to_vec(&key).expect("cache keys serialize");
    hex::encode(Sha256::digest(bytes))
}

#[derive(Debug, Default, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub verified: u64,
}

/// A [`DimOracle`] backed by a directory. With `verify` set every hit is
/// recomputed and compared; a mismatch is an error.
pub struct CachedOracle {
    dir: PathBuf,
    verify: bool,
    stats: Mutex<CacheStats>,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::InvalidParameter(format!("cache {}: {e}", path.display()))
}

impl CachedOracle {
    pub fn new(dir: PathBuf, verify: bool) -> Result<CachedOracle> {
        fs::create_dir_all(&dir).map_err(|e| io_err(&dir, e))?;
        Ok(CachedOracle {
            dir,
            verify,
            stats: Mutex::new(CacheStats::default()),
        })
    }

    pub fn stats(&self) -> CacheStats {
        *self.stats.lock().expect("stats lock")
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(&key[..2]).join(format!("{key}.json"))
    }

    fn load(&self, path: &Path) -> Option<LinearSystemReport> {
        let bytes = fs::read(path).ok()?;
        // unreadable entries are treated as misses and overwritten
        serde_json::from_slice(&bytes).ok()
    }

    fn store(&self, path: &Path, report: &LinearSystemReport) -> Result<()> {
        let parent = path.parent().expect("entries live in a shard directory");
        fs::create_dir_all(parent).map_err(|e| io_err(parent, e))?;
        let tmp = parent.join(format!(
            ".tmp-{}-{}",
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        let bytes = serde_json::to_vec(report).expect("reports serialize");
        let mut f = fs::File::create(&tmp).map_err(|e| io_err(&tmp, e))?;
        f.write_all(&bytes).map_err(|e| io_err(&tmp, e))?;
        f.sync_all().map_err(|e| io_err(&tmp, e))?;
        fs::rename(&tmp, path).map_err(|e| io_err(path, e))
    }

    fn bump(&self, f: impl FnOnce(&mut CacheStats)) {
        f(&mut self.stats.lock().expect("stats lock"));
    }
}

impl DimOracle for CachedOracle {
    fn system_dim(&self, scheme: &FatPointScheme, d: u32, opts: &DimOptions) -> Result<LinearSystemReport> {
        let path = self.path(&cache_key(scheme, d, opts));
        if let Some(hit) = self.load(&path) {
            self.bump(|s| s.hits += 1);
            if self.verify {
                let fresh = system_dim(scheme, d, opts)?;
                if fresh != hit {
                    return Err(Error::InvalidParameter(format!(
                        "cache entry {} differs from recomputation",
                        path.display()
                    )));
                }
                self.bump(|s| s.verified += 1);
            }
            return Ok(hit);
        }
        self.bump(|s| s.misses += 1);
        let report = system_dim(scheme, d, opts)?;
        self.store(&path, &report)?;
        Ok(report)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use fatpoints_core::algebra::Field;
    use fatpoints_core::configs::general;
    use fatpoints_core::linsys::Strategy;

    fn scheme(mults: Vec<u32>) -> FatPointScheme {
        let pts = general(3, 1, 100).unwrap();
        FatPointScheme::new(Field::Rational, pts, mults).unwrap()
    }

    #[test]
    fn key_ignores_point_order_and_zero_mults() {
        let opts = DimOptions::default();
        let a = scheme(vec![2, 1, 0]);
        let pts = a.points().to_vec();
        let b = FatPointScheme::new(Field::Rational, vec![pts[1].clone(), pts[0].clone()], vec![1, 2]).unwrap();
        assert_eq!(cache_key(&a, 3, &opts), cache_key(&b, 3, &opts));
        assert_ne!(cache_key(&a, 3, &opts), cache_key(&a, 4, &opts));
        let exact = DimOptions::with_strategy(Strategy::Exact, 0);
        assert_ne!(cache_key(&a, 3, &opts), cache_key(&a, 3, &exact));
    }

    #[test]
    fn hits_equal_recomputation() {
        let dir = tempfile::tempdir().unwrap();
        let oracle = CachedOracle::new(dir.path().to_path_buf(), true).unwrap();
        let s = scheme(vec![2, 2, 2]);
        let opts = DimOptions::exact();
        let first = oracle.system_dim(&s, 3, &opts).unwrap();
        let second = oracle.system_dim(&s, 3, &opts).unwrap();
        assert_eq!(first, second);
        assert_eq!(first, system_dim(&s, 3, &opts).unwrap());
        assert_eq!(oracle.stats(), CacheStats { hits: 1, misses: 1, verified: 1 });
    }

    #[test]
    fn tampered_entry_fails_verification() {
        let dir = tempfile::tempdir().unwrap();
        let s = scheme(vec![1, 1, 1]);
        let opts = DimOptions::default();
        let oracle = CachedOracle::new(dir.path().to_path_buf(), true).unwrap();
        let mut rep = oracle.system_dim(&s, 1, &opts).unwrap();
        rep.actual_dim += 1;
        oracle.store(&oracle.path(&cache_key(&s, 1, &opts)), &rep).unwrap();
        assert!(oracle.system_dim(&s, 1, &opts).is_err());
    }
}
