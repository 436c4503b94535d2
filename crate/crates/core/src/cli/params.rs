//! Flat `key = value` run configuration files.
//!
//! Blank lines and lines starting with `#` are ignored. Keys accept either
//! `-` or `_` as separator.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

pub const KEYS: &[&str] = &[
    "h0",
    "omega_m0",
    "omega_r0",
    "omega_l0",
    "ell",
    "unit",
    "cutoff",
    "adaptive",
    "tail_tol",
    "tol",
    "format",
    "threads",
    "convention",
];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParamsFile {
    values: BTreeMap<String, String>,
}

impl ParamsFile {
    pub fn parse(text: &str) -> Result<Self, String> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("line {}: expected key=value, got `{line}`", i + 1))?;
            let key = key.trim().replace('-', "_");
            if !KEYS.contains(&key.as_str()) {
                return Err(format!("line {}: unknown key `{key}`", i + 1));
            }
            if values
                .insert(key.clone(), value.trim().to_owned())
                .is_some()
            {
                return Err(format!("line {}: duplicate key `{key}`", i + 1));
            }
        }
        Ok(Self { values })
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::parse(&text)
    }

    /// Parsed value of `key`, if present.
    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, String>
    where
        T::Err: std::fmt::Display,
    {
        self.values
            .get(key)
            .map(|v| {
                v.parse::<T>()
                    .map_err(|e| format!("params file `{key}`: {e}"))
            })
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_separators() {
        let p = ParamsFile::parse("# planck-ish\nh0 = 70\n\nomega-m0=0.3\n").unwrap();
        assert_eq!(p.get::<f64>("h0").unwrap(), Some(70.0));
        assert_eq!(p.get::<f64>("omega_m0").unwrap(), Some(0.3));
        assert_eq!(p.get::<f64>("tol").unwrap(), None);
    }

    #[test]
    fn rejects_unknown_duplicate_and_malformed() {
        assert!(ParamsFile::parse("hubble = 70").is_err());
        assert!(ParamsFile::parse("h0 = 70\nh0 = 71").is_err());
        assert!(ParamsFile::parse("h0 70").is_err());
        assert!(ParamsFile::parse("h0 = fast")
            .unwrap()
            .get::<f64>("h0")
            .is_err());
    }
}
