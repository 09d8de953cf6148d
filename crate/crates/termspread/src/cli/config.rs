//! Flat key = value configuration files.
//!
//! One entry per line, `#` starts a comment, blank lines are ignored. Keys
//! mirror the long command-line flags (`min-train = 40` ↔ `--min-train 40`);
//! a flag given on the command line overrides the file. Later entries for the
//! same key override earlier ones. Keys a command does not use are ignored,
//! so one file can serve several subcommands.

use std::collections::HashMap;
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};

/// A parsed configuration file; values stay raw strings until a command asks
/// for them under a concrete type, so errors can cite the exact line.
#[derive(Debug, Clone, Default)]
pub struct ConfigFile {
    path: PathBuf,
    entries: HashMap<String, (usize, String)>,
}

impl ConfigFile {
    /// A config with no entries, used when no `--config` flag was given.
    pub fn empty() -> Self {
        ConfigFile::default()
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        let mut entries = HashMap::new();
        for (i, raw_line) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = match raw_line.find('#') {
                Some(pos) => &raw_line[..pos],
                None => raw_line,
            };
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(Error::Parse {
                    path: path.display().to_string(),
                    line: line_no,
                    msg: format!("expected 'key = value', got '{line}'"),
                });
            };
            let key = key.trim();
            if key.is_empty() {
                return Err(Error::Parse {
                    path: path.display().to_string(),
                    line: line_no,
                    msg: "empty key before '='".into(),
                });
            }
            entries.insert(key.to_string(), (line_no, value.trim().to_string()));
        }
        Ok(ConfigFile {
            path: path.to_path_buf(),
            entries,
        })
    }

    /// The raw string for `key`, if present.
    pub fn raw(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|(_, v)| v.as_str())
    }

    /// Parse the entry for `key` as `T`, citing the file line on failure.
    pub fn get<T>(&self, key: &str) -> Result<Option<T>>
    where
        T: FromStr,
        T::Err: Display,
    {
        match self.entries.get(key) {
            None => Ok(None),
            Some((line, value)) => value.parse().map(Some).map_err(|e: T::Err| Error::Parse {
                path: self.path.display().to_string(),
                line: *line,
                msg: format!("invalid value '{value}' for key '{key}': {e}"),
            }),
        }
    }
}

/// Command-line flag if given, else config-file entry, else `None`.
pub fn merge<T>(flag: Option<T>, cfg: &ConfigFile, key: &str) -> Result<Option<T>>
where
    T: FromStr,
    T::Err: Display,
{
    match flag {
        Some(v) => Ok(Some(v)),
        None => cfg.get(key),
    }
}
