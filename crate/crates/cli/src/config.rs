//! Run configuration: defaults, then a `key = value` file, then flags, then
//! `LH_*` environment variables.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::ValueEnum;
use lh_core::special::Branch;

/// Invalid input that is the caller's fault (exit code 2).
#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BranchArg {
    /// (1 - ε⁴) e^{-iπ}
    Minus,
    /// (1 - ε⁴) e^{+iπ}
    Plus,
}

impl From<BranchArg> for Branch {
    fn from(b: BranchArg) -> Self {
        match b {
            BranchArg::Minus => Branch::MinusIPi,
            BranchArg::Plus => Branch::PlusIPi,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub j_max: u32,
    pub cauchy_tolerance: f64,
    pub cauchy_window: u32,
    pub branch: BranchArg,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub threads: Option<usize>,
    pub exact_max_j: u32,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            j_max: 200,
            cauchy_tolerance: 1e-6,
            cauchy_window: 10,
            branch: BranchArg::Minus,
            format: Format::Json,
            output: None,
            threads: None,
            exact_max_j: lh_core::principal_series::DEFAULT_EXACT_MAX_J,
        }
    }
}

/// Values given on the command line.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub j_max: Option<u32>,
    pub cauchy_tolerance: Option<f64>,
    pub cauchy_window: Option<u32>,
    pub branch: Option<BranchArg>,
    pub format: Option<Format>,
    pub output: Option<PathBuf>,
    pub threads: Option<usize>,
    pub exact_max_j: Option<u32>,
}

pub const KEYS: [&str; 8] = [
    "j_max",
    "cauchy_tolerance",
    "cauchy_window",
    "branch",
    "format",
    "output",
    "threads",
    "exact_max_j",
];

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, UsageError> {
    value
        .trim()
        .parse()
        .map_err(|_| usage(format!("invalid value {value:?} for {key}")))
}

fn parse_enum<T: ValueEnum>(key: &str, value: &str) -> Result<T, UsageError> {
    T::from_str(value.trim(), true).map_err(|_| usage(format!("invalid value {value:?} for {key}")))
}

impl RunConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), UsageError> {
        match key {
            "j_max" => self.j_max = parse(key, value)?,
            "cauchy_tolerance" => self.cauchy_tolerance = parse(key, value)?,
            "cauchy_window" => self.cauchy_window = parse(key, value)?,
            "branch" => self.branch = parse_enum(key, value)?,
            "format" => self.format = parse_enum(key, value)?,
            "output" => self.output = Some(PathBuf::from(value.trim())),
            "threads" => self.threads = Some(parse(key, value)?),
            "exact_max_j" => self.exact_max_j = parse(key, value)?,
            _ => return Err(usage(format!("unknown configuration key {key:?}"))),
        }
        Ok(())
    }

    /// Applies `key = value` lines; `#` starts a comment.
    pub fn apply_file_contents(&mut self, text: &str) -> Result<(), UsageError> {
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| usage(format!("config line {}: expected key = value", n + 1)))?;
            self.set(key.trim(), value)?;
        }
        Ok(())
    }

    fn apply_overrides(&mut self, o: &Overrides) {
        if let Some(v) = o.j_max {
            self.j_max = v;
        }
        if let Some(v) = o.cauchy_tolerance {
            self.cauchy_tolerance = v;
        }
        if let Some(v) = o.cauchy_window {
            self.cauchy_window = v;
        }
        if let Some(v) = o.branch {
            self.branch = v;
        }
        if let Some(v) = o.format {
            self.format = v;
        }
        if let Some(v) = &o.output {
            self.output = Some(v.clone());
        }
        if let Some(v) = o.threads {
            self.threads = Some(v);
        }
        if let Some(v) = o.exact_max_j {
            self.exact_max_j = v;
        }
    }

    /// `LH_J_MAX`, `LH_FORMAT`, ... for every key.
    fn apply_env<I>(&mut self, vars: I) -> Result<(), UsageError>
    where
        I: IntoIterator<Item = (String, String)>,
    {
        for (name, value) in vars {
            let Some(rest) = name.strip_prefix("LH_") else {
                continue;
            };
            let key = rest.to_ascii_lowercase();
            if KEYS.contains(&key.as_str()) {
                self.set(&key, &value)?;
            }
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), UsageError> {
        if self.j_max < 1 {
            return Err(usage("j_max must be at least 1"));
        }
        if !(self.cauchy_tolerance > 0.0 && self.cauchy_tolerance.is_finite()) {
            return Err(usage("cauchy_tolerance must be positive"));
        }
        if self.cauchy_window < 1 {
            return Err(usage("cauchy_window must be at least 1"));
        }
        if self.threads == Some(0) {
            return Err(usage("threads must be at least 1"));
        }
        Ok(())
    }

    pub fn load<I>(file: Option<&Path>, flags: &Overrides, env: I) -> Result<Self, UsageError>
    where
        I: IntoIterator<Item = (String, String)>,
    {
        let mut cfg = RunConfig::default();
        if let Some(path) = file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
            cfg.apply_file_contents(&text)?;
        }
        cfg.apply_overrides(flags);
        cfg.apply_env(env)?;
        cfg.validate()?;
        Ok(cfg)
    }
}
