//! Results cache: one JSON file per task, keyed by a hash of the task kind,
//! its resolved parameters and the tool version.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::record::{Params, TaskKind, TaskRecord};
use crate::CliError;

pub const CACHE_ENV: &str = "CUBE_KAPPA_CACHE";

/// `$CUBE_KAPPA_CACHE`, else `$XDG_CACHE_HOME/cube-kappa`, else
/// `~/.cache/cube-kappa`.
pub fn default_dir() -> PathBuf {
    if let Some(dir) = std::env::var_os(CACHE_ENV) {
        return PathBuf::from(dir);
    }
    if let Some(dir) = std::env::var_os("XDG_CACHE_HOME") {
        return PathBuf::from(dir).join("cube-kappa");
    }
    let home = std::env::var_os("HOME")
        .map(PathBuf::from)
        .unwrap_or_else(std::env::temp_dir);
    home.join(".cache").join("cube-kappa")
}

pub fn key(task: TaskKind, params: &Params, version: &str) -> String {
    let canonical = serde_json::to_string(params).expect("params serialize");
    let mut hasher = Sha256::new();
    hasher.update(task.name().as_bytes());
    hasher.update(b"\n");
    hasher.update(canonical.as_bytes());
    hasher.update(b"\n");
    hasher.update(version.as_bytes());
    hex::encode(hasher.finalize())
}

pub enum Lookup {
    Hit(Box<TaskRecord>),
    Miss,
    /// The entry exists but does not parse or does not match its key.
    Corrupt(String),
}

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: PathBuf) -> Self {
        Cache { dir }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn entry_path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn lookup(&self, key: &str, task: TaskKind, params: &Params, version: &str) -> Lookup {
        let path = self.entry_path(key);
        let text = match fs::read_to_string(&path) {
            Ok(text) => text,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Lookup::Miss,
            Err(e) => return Lookup::Corrupt(format!("{}: {e}", path.display())),
        };
        match serde_json::from_str::<TaskRecord>(&text) {
            Ok(r) if r.task == task && &r.params == params && r.version == version => Lookup::Hit(Box::new(r)),
            Ok(_) => Lookup::Corrupt(format!("{}: entry does not match its key", path.display())),
            Err(e) => Lookup::Corrupt(format!("{}: {e}", path.display())),
        }
    }

    /// Writes to a temporary file in the cache directory, then renames it
    /// over the entry.
    pub fn store(&self, key: &str, record: &TaskRecord) -> Result<PathBuf, CliError> {
        fs::create_dir_all(&self.dir).map_err(|e| CliError::io(&self.dir, e))?;
        let path = self.entry_path(key);
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir).map_err(|e| CliError::io(&self.dir, e))?;
        tmp.write_all(record.to_json().as_bytes())
            .and_then(|_| tmp.write_all(b"\n"))
            .map_err(|e| CliError::io(tmp.path(), e))?;
        tmp.persist(&path).map_err(|e| CliError::io(&path, e.error))?;
        Ok(path)
    }

    /// Parsed entries in file-name order; unreadable ones are skipped.
    pub fn list(&self) -> Result<Vec<(String, TaskRecord)>, CliError> {
        let entries = match fs::read_dir(&self.dir) {
            Ok(entries) => entries,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(CliError::io(&self.dir, e)),
        };
        let mut out = Vec::new();
        for entry in entries {
            let path = entry.map_err(|e| CliError::io(&self.dir, e))?.path();
            let Some(key) = entry_key(&path) else { continue };
            if let Ok(record) = fs::read_to_string(&path)
                .map_err(|e| e.to_string())
                .and_then(|t| serde_json::from_str::<TaskRecord>(&t).map_err(|e| e.to_string()))
            {
                out.push((key, record));
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }

    /// Removes every entry, returning how many were removed.
    pub fn clear(&self) -> Result<usize, CliError> {
        let entries = match fs::read_dir(&self.dir) {
            Ok(entries) => entries,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(0),
            Err(e) => return Err(CliError::io(&self.dir, e)),
        };
        let mut removed = 0;
        for entry in entries {
            let path = entry.map_err(|e| CliError::io(&self.dir, e))?.path();
            if entry_key(&path).is_some() {
                fs::remove_file(&path).map_err(|e| CliError::io(&path, e))?;
                removed += 1;
            }
        }
        Ok(removed)
    }
}

fn entry_key(path: &Path) -> Option<String> {
    if path.extension()? != "json" {
        return None;
    }
    let stem = path.file_stem()?.to_str()?;
    (stem.len() == 64 && stem.bytes().all(|b| b.is_ascii_hexdigit())).then(|| stem.to_string())
}
