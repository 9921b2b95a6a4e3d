//! `key = value` configuration text.
//!
//! One setting per line. Blank lines and lines starting with `#` are
//! ignored; whitespace around keys and values is trimmed. A key may appear
//! more than once, in which case the last value wins when applied in order.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("line {line}: unknown key {key:?}")]
    UnknownKey { line: usize, key: String },
    #[error("line {line}: invalid value {value:?} for {key}: expected {expected}")]
    InvalidValue {
        line: usize,
        key: String,
        value: String,
        expected: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigEntry {
    pub line: usize,
    pub key: String,
    pub value: String,
}

impl ConfigEntry {
    pub fn invalid(&self, expected: impl Into<String>) -> ConfigError {
        ConfigError::InvalidValue {
            line: self.line,
            key: self.key.clone(),
            value: self.value.clone(),
            expected: expected.into(),
        }
    }

    pub fn unknown(&self) -> ConfigError {
        ConfigError::UnknownKey {
            line: self.line,
            key: self.key.clone(),
        }
    }

    pub fn parse<T: std::str::FromStr>(&self, expected: &str) -> Result<T, ConfigError> {
        self.value.parse().map_err(|_| self.invalid(expected))
    }

    /// Accepts on/off, true/false, yes/no and 1/0.
    pub fn parse_switch(&self) -> Result<bool, ConfigError> {
        match self.value.to_ascii_lowercase().as_str() {
            "on" | "true" | "yes" | "1" => Ok(true),
            "off" | "false" | "no" | "0" => Ok(false),
            _ => Err(self.invalid("on or off")),
        }
    }
}

pub fn parse_key_values(text: &str) -> Result<Vec<ConfigEntry>, ConfigError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or(ConfigError::Syntax { line: i + 1 })?;
        let key = key.trim();
        if key.is_empty() {
            return Err(ConfigError::Syntax { line: i + 1 });
        }
        out.push(ConfigEntry {
            line: i + 1,
            key: key.to_string(),
            value: value.trim().to_string(),
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_entries_and_skips_comments() {
        let entries = parse_key_values("# c\n\n a = 1 \nb=two words\nc =\n").unwrap();
        let pairs: Vec<(&str, &str, usize)> = entries
            .iter()
            .map(|e| (e.key.as_str(), e.value.as_str(), e.line))
            .collect();
        assert_eq!(pairs, [("a", "1", 3), ("b", "two words", 4), ("c", "", 5)]);
    }

    #[test]
    fn rejects_lines_without_key() {
        assert_eq!(
            parse_key_values("a=1\njunk\n"),
            Err(ConfigError::Syntax { line: 2 })
        );
        assert_eq!(parse_key_values("=1"), Err(ConfigError::Syntax { line: 1 }));
    }

    #[test]
    fn switches() {
        let e = |v: &str| ConfigEntry {
            line: 1,
            key: "k".into(),
            value: v.into(),
        };
        assert!(e("ON").parse_switch().unwrap());
        assert!(!e("false").parse_switch().unwrap());
        assert!(e("maybe").parse_switch().is_err());
    }
}
