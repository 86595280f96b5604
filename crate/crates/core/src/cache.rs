//! Optional on-disk cache for built structures, keyed by a content hash of
//! the construction parameters.  Enabled by pointing `METASYM_WORKSPACE` at
//! a directory; everything is rebuilt from scratch when unset.

use serde::{de::DeserializeOwned, Serialize};
use sha2::{Digest, Sha256};
use std::fs;
use std::path::PathBuf;

/// Environment variable naming the workspace directory.
pub const WORKSPACE_ENV: &str = "METASYM_WORKSPACE";

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

/// Content hash of the canonical JSON encoding of the parameters.
pub fn content_key(kind: &str, params: &impl Serialize) -> String {
    let encoded = serde_json::to_vec(params).expect("parameters are serializable");
    let mut hasher = Sha256::new();
    hasher.update(kind.as_bytes());
    hasher.update([0]);
    hasher.update(&encoded);
    hex(&hasher.finalize())
}

fn workspace_dir() -> Option<PathBuf> {
    std::env::var_os(WORKSPACE_ENV).map(PathBuf::from)
}

fn cache_path(key: &str) -> Option<PathBuf> {
    workspace_dir().map(|d| d.join("cache").join(format!("{key}.json")))
}

/// Loads a cached structure when the workspace is configured and the entry
/// exists; silently falls through to a rebuild on any problem.
pub fn load<T: DeserializeOwned>(key: &str) -> Option<T> {
    let path = cache_path(key)?;
    let bytes = fs::read(path).ok()?;
    serde_json::from_slice(&bytes).ok()
}

/// Stores a structure in the workspace cache; errors are reported to stderr
/// but never fail the caller.
pub fn store<T: Serialize>(key: &str, value: &T) {
    let Some(path) = cache_path(key) else {
        return;
    };
    let write = || -> std::io::Result<()> {
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        let bytes = serde_json::to_vec(value).expect("cache values are serializable");
        fs::write(&path, bytes)
    };
    if let Err(e) = write() {
        eprintln!("warning: could not write cache entry {key}: {e}");
    }
}

/// Builds through the cache: load on hit, build and store on miss.
pub fn get_or_build<T, F>(kind: &str, params: &impl Serialize, build: F) -> T
where
    T: Serialize + DeserializeOwned,
    F: FnOnce() -> T,
{
    let key = content_key(kind, params);
    if let Some(hit) = load::<T>(&key) {
        return hit;
    }
    let value = build();
    store(&key, &value);
    value
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_depend_on_kind_and_params() {
        let a = content_key("group", &serde_json::json!([[1, 3], [3, 1]]));
        let b = content_key("group", &serde_json::json!([[1, 4], [4, 1]]));
        let c = content_key("geometry", &serde_json::json!([[1, 3], [3, 1]]));
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_eq!(a.len(), 64);
    }
}
