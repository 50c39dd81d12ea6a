//! Run configuration, the JSON result envelope, and the on-disk cache
//! for expensive searches.
//!
//! Envelope layout (stable; `version` stamps the schema):
//! `{ command, inputs, result, exhaustive, elapsed_ms, version }`.
//! The `result` payload is deterministic for fixed inputs regardless of
//! worker count; `elapsed_ms` is informational only.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::{Error, Result};

pub const ENVELOPE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Environment variable overriding the cache directory.
pub const CACHE_DIR_ENV: &str = "DTUPLE_CACHE_DIR";

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub timeout_seconds: u64,
    pub worker_count: usize,
    pub cache_dir: Option<PathBuf>,
    pub tolerance: f64,
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            timeout_seconds: 3600,
            worker_count: 0,
            cache_dir: None,
            tolerance: crate::ffmodel::CHAR_SUM_TOL,
            output: None,
        }
    }
}

impl RunConfig {
    /// Layer a key=value config file over the defaults. Unknown keys are
    /// rejected so typos do not silently change behavior.
    pub fn load_file(&mut self, path: &Path) -> Result<()> {
        let text = fs::read_to_string(path)?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::InvalidParam(format!(
                    "{}:{}: expected key=value, got {raw:?}",
                    path.display(),
                    lineno + 1
                )));
            };
            let (key, value) = (key.trim(), value.trim());
            match key {
                "timeout_seconds" => {
                    self.timeout_seconds = value
                        .parse()
                        .map_err(|_| Error::InvalidParam(format!("bad timeout: {value}")))?
                }
                "worker_count" => {
                    self.worker_count = value
                        .parse()
                        .map_err(|_| Error::InvalidParam(format!("bad worker count: {value}")))?
                }
                "cache_dir" => self.cache_dir = Some(PathBuf::from(value)),
                "tolerance" => {
                    self.tolerance = value
                        .parse()
                        .map_err(|_| Error::InvalidParam(format!("bad tolerance: {value}")))?
                }
                "output" => self.output = Some(PathBuf::from(value)),
                other => {
                    return Err(Error::InvalidParam(format!(
                        "unknown config key {other:?} in {}",
                        path.display()
                    )))
                }
            }
        }
        self.validate()
    }

    pub fn validate(&self) -> Result<()> {
        if self.timeout_seconds == 0 {
            return Err(Error::InvalidParam("timeout must be positive".into()));
        }
        if !(self.tolerance >= 0.0) {
            return Err(Error::InvalidParam("tolerance must be >= 0".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ResultEnvelope {
    pub command: String,
    pub inputs: serde_json::Value,
    pub result: serde_json::Value,
    pub exhaustive: bool,
    pub elapsed_ms: u64,
    pub version: String,
}

/// Content-addressed store of result envelopes, keyed by a hash of the
/// command, its canonical inputs, and the schema version.
#[derive(Clone, Debug)]
pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn open(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir)
            .map_err(|e| Error::Cache(format!("cannot create {}: {e}", dir.display())))?;
        Ok(Cache {
            dir: dir.to_path_buf(),
        })
    }

    pub fn key(command: &str, inputs: &serde_json::Value) -> String {
        let canonical = serde_json::json!({
            "command": command,
            "inputs": inputs,
            "version": ENVELOPE_VERSION,
        });
        let digest = Sha256::digest(canonical.to_string().as_bytes());
        let mut hex = String::with_capacity(64);
        for byte in digest {
            hex.push_str(&format!("{byte:02x}"));
        }
        hex
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    /// Stored envelope for the key, if present, parseable, and from the
    /// current schema version. Corrupt entries are skipped with a
    /// warning; stale versions are treated as misses.
    pub fn lookup(&self, key: &str) -> Option<ResultEnvelope> {
        let path = self.path(key);
        let text = fs::read_to_string(&path).ok()?;
        match serde_json::from_str::<ResultEnvelope>(&text) {
            Ok(env) if env.version == ENVELOPE_VERSION => Some(env),
            Ok(_) => None,
            Err(e) => {
                eprintln!("warning: skipping corrupt cache entry {}: {e}", path.display());
                None
            }
        }
    }

    pub fn store(&self, key: &str, envelope: &ResultEnvelope) -> Result<()> {
        let path = self.path(key);
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_vec_pretty(envelope)?)?;
        fs::rename(&tmp, &path)?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_envelope() -> ResultEnvelope {
        ResultEnvelope {
            command: "verify".into(),
            inputs: serde_json::json!({"set": [1, 3, 8, 120], "n": 1}),
            result: serde_json::json!({"holds": true}),
            exhaustive: true,
            elapsed_ms: 3,
            version: ENVELOPE_VERSION.into(),
        }
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let env = sample_envelope();
        let key = Cache::key(&env.command, &env.inputs);
        assert!(cache.lookup(&key).is_none());
        cache.store(&key, &env).unwrap();
        assert_eq!(cache.lookup(&key), Some(env));
    }

    #[test]
    fn cache_version_mismatch_is_a_miss() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let mut env = sample_envelope();
        env.version = "0.0.0-old".into();
        let key = Cache::key(&env.command, &env.inputs);
        cache.store(&key, &env).unwrap();
        assert!(cache.lookup(&key).is_none());
    }

    #[test]
    fn cache_corrupt_entry_is_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::open(dir.path()).unwrap();
        let key = Cache::key("clique", &serde_json::json!({"range": "1:10"}));
        fs::write(dir.path().join(format!("{key}.json")), b"{ not json").unwrap();
        assert!(cache.lookup(&key).is_none());
    }

    #[test]
    fn cache_creates_missing_dir() {
        let dir = tempfile::tempdir().unwrap();
        let nested = dir.path().join("a/b/c");
        let cache = Cache::open(&nested).unwrap();
        let env = sample_envelope();
        cache.store("k", &env).unwrap();
        assert_eq!(cache.lookup("k"), Some(env));
    }

    #[test]
    fn config_file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("dtuple.conf");
        fs::write(
            &path,
            "# comment\ntimeout_seconds = 120\nworker_count=4\ntolerance = 0.001\n",
        )
        .unwrap();
        let mut cfg = RunConfig::default();
        cfg.load_file(&path).unwrap();
        assert_eq!(cfg.timeout_seconds, 120);
        assert_eq!(cfg.worker_count, 4);
        assert_eq!(cfg.tolerance, 0.001);

        fs::write(&path, "bogus_key = 1\n").unwrap();
        assert!(RunConfig::default().load_file(&path).is_err());
    }
}
