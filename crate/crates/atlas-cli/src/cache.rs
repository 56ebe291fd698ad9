//! Content-addressed cache of census documents.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::document::{AtlasDocument, TOOL_VERSION};

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: PathBuf) -> Self {
        Cache { dir }
    }

    /// `$ATLAS_CACHE_DIR`, else `$XDG_CACHE_HOME/atlas`, else `~/.cache/atlas`.
    pub fn default_dir() -> Option<PathBuf> {
        if let Some(dir) = std::env::var_os("ATLAS_CACHE_DIR") {
            return Some(dir.into());
        }
        if let Some(dir) = std::env::var_os("XDG_CACHE_HOME") {
            return Some(Path::new(&dir).join("atlas"));
        }
        std::env::var_os("HOME").map(|home| Path::new(&home).join(".cache").join("atlas"))
    }

    pub fn key(command: &str, spec: &str, table_cap: usize) -> String {
        let mut hasher = Sha256::new();
        for part in [TOOL_VERSION, command, spec, &table_cap.to_string()] {
            hasher.update(part.as_bytes());
            hasher.update([0]);
        }
        hex::encode(hasher.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(&key[..2]).join(format!("{key}.json"))
    }

    /// A stored document, ignoring unreadable or stale entries.
    pub fn load(&self, key: &str) -> Option<AtlasDocument> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let doc: AtlasDocument = serde_json::from_str(&text).ok()?;
        (doc.tool_version == TOOL_VERSION && doc.is_consistent()).then_some(doc)
    }

    /// Best effort: failures to write the cache are not errors.
    pub fn store(&self, key: &str, doc: &AtlasDocument) {
        let path = self.path(key);
        let Some(parent) = path.parent() else { return };
        if fs::create_dir_all(parent).is_err() {
            return;
        }
        let Ok(text) = serde_json::to_string(doc) else { return };
        let tmp = path.with_extension("tmp");
        if fs::write(&tmp, text).is_ok() {
            let _ = fs::rename(&tmp, &path);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = Cache::new(dir.path().to_owned());
        let key = Cache::key("census", "S3", 10_000);
        assert_ne!(key, Cache::key("census", "S4", 10_000));
        assert_ne!(key, Cache::key("census", "S3", 5));
        assert!(cache.load(&key).is_none());
        let doc = AtlasDocument::new("S3".into(), 6, 18, Vec::new());
        cache.store(&key, &doc);
        assert_eq!(cache.load(&key), Some(doc));
    }
}
