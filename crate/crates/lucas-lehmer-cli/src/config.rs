//! Run configuration: defaults, a flat `key = value` file, then flags.

use std::path::{Path, PathBuf};

use rug::Integer;
use thiserror::Error;

/// Smallest accepted working precision, in decimal digits.
pub const MIN_PRECISION: u32 = 50;

/// Default working precision, in decimal digits.
pub const DEFAULT_PRECISION: u32 = 200;

/// Default scan box.
pub const DEFAULT_BOX: u64 = 10_000;

/// Problems with the configuration; all map to the "unsupported input"
/// exit code.
#[derive(Debug, Error)]
pub enum ConfigError {
    /// The file could not be read.
    #[error("cannot read config file {path}: {source}")]
    Read {
        /// File.
        path: PathBuf,
        /// Cause.
        source: std::io::Error,
    },
    /// A line is not `key = value`.
    #[error("config line {line}: expected `key = value`, got `{text}`")]
    Syntax {
        /// 1-based line number.
        line: usize,
        /// The offending text.
        text: String,
    },
    /// Unknown key.
    #[error("config line {line}: unknown key `{key}`")]
    UnknownKey {
        /// 1-based line number.
        line: usize,
        /// The key.
        key: String,
    },
    /// A value that does not parse or violates a bound.
    #[error("invalid value for `{key}`: {reason}")]
    Value {
        /// The key.
        key: String,
        /// Why.
        reason: String,
    },
}

/// Output format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    /// Human-readable text.
    Text,
    /// JSON.
    Json,
}

/// Everything a command needs besides its positional arguments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    /// Minimum working precision in decimal digits.
    pub precision: u32,
    /// Scan box: `|x|, |y| < box`.
    pub scan_box: Integer,
    /// Worker threads (0 means one per core).
    pub threads: usize,
    /// Output format.
    pub format: Format,
    /// Check every emitted pair against the definition as well.
    pub check_direct: bool,
    /// Write output here instead of standard output.
    pub output: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision: DEFAULT_PRECISION,
            scan_box: Integer::from(DEFAULT_BOX),
            threads: 0,
            format: Format::Text,
            check_direct: false,
            output: None,
        }
    }
}

fn parse_bool(key: &str, v: &str) -> Result<bool, ConfigError> {
    match v {
        "true" | "yes" | "1" | "on" => Ok(true),
        "false" | "no" | "0" | "off" => Ok(false),
        _ => Err(ConfigError::Value { key: key.into(), reason: format!("`{v}` is not a boolean") }),
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, ConfigError> {
    v.parse().map_err(|_| ConfigError::Value { key: key.into(), reason: format!("`{v}` is not a number") })
}

impl RunConfig {
    /// Apply one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str, line: usize) -> Result<(), ConfigError> {
        match key {
            "prec" | "precision" => self.precision = parse_num(key, value)?,
            "box" => {
                self.scan_box = value.parse::<Integer>().map_err(|_| ConfigError::Value {
                    key: key.into(),
                    reason: format!("`{value}` is not an integer"),
                })?
            }
            "threads" => self.threads = parse_num(key, value)?,
            "json" => self.format = if parse_bool(key, value)? { Format::Json } else { Format::Text },
            "check-direct" | "check_direct" => self.check_direct = parse_bool(key, value)?,
            "output" => self.output = Some(PathBuf::from(value)),
            _ => return Err(ConfigError::UnknownKey { line, key: key.into() }),
        }
        Ok(())
    }

    /// Apply a config file's text.  Blank lines and `#` comments are
    /// ignored.
    pub fn apply_text(&mut self, text: &str) -> Result<(), ConfigError> {
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| ConfigError::Syntax { line: i + 1, text: raw.to_string() })?;
            self.set(k.trim(), v.trim(), i + 1)?;
        }
        Ok(())
    }

    /// Apply a config file.
    pub fn apply_file(&mut self, path: &Path) -> Result<(), ConfigError> {
        let text =
            std::fs::read_to_string(path).map_err(|source| ConfigError::Read { path: path.to_path_buf(), source })?;
        self.apply_text(&text)
    }

    /// Check the bounds: precision at least [`MIN_PRECISION`], box at
    /// least 1, threads at least 1 once resolved.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.precision < MIN_PRECISION {
            return Err(ConfigError::Value {
                key: "prec".into(),
                reason: format!("{} digits is below the minimum of {MIN_PRECISION}", self.precision),
            });
        }
        if self.scan_box < 1 {
            return Err(ConfigError::Value { key: "box".into(), reason: "the box must be at least 1".into() });
        }
        Ok(())
    }

    /// Worker count with `0` resolved to the number of cores.
    pub fn resolved_threads(&self) -> usize {
        if self.threads == 0 {
            std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
        } else {
            self.threads
        }
    }
}
