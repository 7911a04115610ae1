//! `key = value` config files. Blank lines and `#` comments are ignored.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::Failure;

pub const KEYS: [&str; 13] =
    ["data", "groups", "l_min", "l_max", "starts", "seed", "max_evals", "tol", "params", "alpha", "m0", "a0", "b0"];

#[derive(Debug, Default)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn load(path: &Path) -> Result<Self, Failure> {
        let src = std::fs::read_to_string(path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
        Self::parse(&src).map_err(|m| Failure::usage(format!("{}: {m}", path.display())))
    }

    pub fn parse(src: &str) -> Result<Self, String> {
        let mut values = BTreeMap::new();
        for (i, raw) in src.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((k, v)) = line.split_once('=') else {
                return Err(format!("line {}: expected `key = value`", i + 1));
            };
            let (k, v) = (k.trim(), v.trim());
            if !KEYS.contains(&k) {
                return Err(format!("line {}: unknown key `{k}`", i + 1));
            }
            if values.insert(k.to_string(), v.to_string()).is_some() {
                return Err(format!("line {}: duplicate key `{k}`", i + 1));
            }
        }
        Ok(Self { values })
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, Failure>
    where
        T::Err: std::fmt::Display,
    {
        self.raw(key).map(|v| v.parse().map_err(|e| Failure::usage(format!("config key `{key}`: {e}")))).transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pairs_and_comments() {
        let c = Config::parse("# fit setup\nseed = 7\n\nl_max=20  # wide\ngroups = baryon, meson\n").unwrap();
        assert_eq!(c.get::<u64>("seed").unwrap(), Some(7));
        assert_eq!(c.get::<u32>("l_max").unwrap(), Some(20));
        assert_eq!(c.raw("groups"), Some("baryon, meson"));
        assert_eq!(c.get::<u32>("l_min").unwrap(), None);
    }

    #[test]
    fn rejects_bad_lines() {
        assert!(Config::parse("seed 7").unwrap_err().contains("line 1"));
        assert!(Config::parse("colour = red").unwrap_err().contains("unknown key"));
        assert!(Config::parse("seed = 1\nseed = 2").unwrap_err().contains("duplicate"));
    }

    #[test]
    fn bad_value_is_usage_error() {
        let c = Config::parse("seed = many").unwrap();
        assert_eq!(c.get::<u64>("seed").unwrap_err().code, 2);
    }
}
