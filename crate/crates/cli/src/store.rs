//! On-disk cache of cohomology quotients, one JSON file per key.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use unram_core::{CohomologyStore, ModSubquotient};

pub struct DiskStore {
    dir: PathBuf,
}

impl DiskStore {
    pub fn open(dir: &Path) -> std::io::Result<DiskStore> {
        fs::create_dir_all(dir)?;
        Ok(DiskStore { dir: dir.to_path_buf() })
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }
}

impl CohomologyStore for DiskStore {
    fn load(&self, key: &str) -> Option<ModSubquotient> {
        let bytes = fs::read(self.path(key)).ok()?;
        match serde_json::from_slice(&bytes) {
            Ok(q) => Some(q),
            Err(e) => {
                log::warn!("cache entry {key} is corrupt ({e}); recomputing");
                None
            }
        }
    }

    /// Writes to a temporary file in the cache directory and renames it into
    /// place, so readers never see a partial entry.
    fn save(&self, key: &str, value: &ModSubquotient) {
        let result = (|| -> std::io::Result<()> {
            let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
            serde_json::to_writer(&mut tmp, value)?;
            tmp.flush()?;
            tmp.persist(self.path(key)).map_err(|e| e.error)?;
            Ok(())
        })();
        if let Err(e) = result {
            log::warn!("could not write cache entry {key}: {e}");
        }
    }
}
