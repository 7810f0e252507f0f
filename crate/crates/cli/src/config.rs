//! Plain-text run files: one `key = value` per line, `#` starts a comment.
//! Keys are the long flag names without dashes (`T`, `beta`, `T-min`, ...).

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::error::CliError;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    entries: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut entries = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("config line {}: expected `key = value`", n + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            if key.is_empty() || value.is_empty() {
                return Err(CliError::Usage(format!("config line {}: empty key or value", n + 1)));
            }
            if entries.insert(key.to_string(), value.to_string()).is_some() {
                return Err(CliError::Usage(format!("config line {}: duplicate key '{key}'", n + 1)));
            }
        }
        Ok(Self { entries })
    }

    /// Fails on the first key outside `allowed`.
    pub fn restrict(&self, allowed: &[&str], context: &str) -> Result<(), CliError> {
        match self.entries.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(CliError::Usage(format!("unknown config key '{k}' for {context}"))),
            None => Ok(()),
        }
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(String::as_str)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        self.raw(key)
            .map(|v| v.parse().map_err(|e| CliError::Usage(format!("config key '{key}': invalid value '{v}': {e}"))))
            .transpose()
    }

    /// Comma-separated list, empty when the key is absent.
    pub fn get_list<T: FromStr>(&self, key: &str) -> Result<Vec<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        let Some(v) = self.raw(key) else { return Ok(Vec::new()) };
        v.split(',')
            .map(|item| {
                let item = item.trim();
                item.parse().map_err(|e| CliError::Usage(format!("config key '{key}': invalid value '{item}': {e}")))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_lists() {
        let c = ConfigFile::parse("# run\nT = 0.4, 0.5  # two\n\nsteps=60\n").unwrap();
        assert_eq!(c.get_list::<f64>("T").unwrap(), vec![0.4, 0.5]);
        assert_eq!(c.get::<usize>("steps").unwrap(), Some(60));
        assert_eq!(c.get::<usize>("beta").unwrap(), None);
        assert!(c.restrict(&["T", "steps"], "line").is_ok());
        assert!(c.restrict(&["T"], "line").is_err());
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(ConfigFile::parse("T 0.4").is_err());
        assert!(ConfigFile::parse("T =").is_err());
        assert!(ConfigFile::parse("T = 1\nT = 2").is_err());
        assert!(ConfigFile::parse("steps = x").unwrap().get::<usize>("steps").is_err());
    }
}
