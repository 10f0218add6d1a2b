//! Run configuration: worker count, engine caps, output format and the slow
//! test tier.
//!
//! Settings come from defaults, then an optional file of `key = value`
//! lines, then command-line flags. Blank lines and `#` comments are ignored.
//!
//! ```text
//! # goldilocks.conf
//! workers = 4
//! direct_cap = 6
//! sd_cap = 7
//! format = json
//! slow_tests = false
//! ```
//!
//! `GOLDILOCKS_WORKERS` overrides the default worker count.

use std::fmt;
use std::str::FromStr;

use crate::boolfn::ARITY_MAX;
use crate::enumerate::{EnumerationBudget, DIRECT_LIMIT};
use crate::error::{Error, Result};

pub const WORKERS_ENV: &str = "GOLDILOCKS_WORKERS";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Md,
    Csv,
    Json,
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Md => "md",
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "md" | "markdown" => Ok(OutputFormat::Md),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Parse(format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub workers: usize,
    pub direct_cap: usize,
    pub sd_cap: usize,
    pub format: OutputFormat,
    pub slow_tests: bool,
}

impl Default for Config {
    fn default() -> Self {
        let budget = EnumerationBudget::default();
        Config {
            workers: 1,
            direct_cap: budget.direct_cap,
            sd_cap: budget.sd_cap,
            format: OutputFormat::default(),
            slow_tests: false,
        }
    }
}

impl Config {
    /// Defaults with the worker count taken from the environment, or the
    /// machine's parallelism.
    pub fn from_env() -> Result<Self> {
        let workers = match std::env::var(WORKERS_ENV) {
            Ok(v) => parse_workers(&v)?,
            Err(_) => std::thread::available_parallelism().map_or(1, |n| n.get()),
        };
        Ok(Config {
            workers,
            ..Config::default()
        })
    }

    /// Applies the settings in `text` on top of `self`.
    pub fn merge_str(mut self, text: &str) -> Result<Self> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Parse(format!("line {}: expected key = value", lineno + 1))
            })?;
            let value = value.trim().trim_matches('"');
            let bad = |what: &str| Error::Parse(format!("line {}: invalid {what}", lineno + 1));
            match key.trim() {
                "workers" => self.workers = parse_workers(value)?,
                "direct_cap" => self.direct_cap = value.parse().map_err(|_| bad("direct_cap"))?,
                "sd_cap" => self.sd_cap = value.parse().map_err(|_| bad("sd_cap"))?,
                "format" => self.format = value.parse()?,
                "slow_tests" => self.slow_tests = value.parse().map_err(|_| bad("slow_tests"))?,
                other => {
                    return Err(Error::Parse(format!(
                        "line {}: unknown key {other:?}",
                        lineno + 1
                    )))
                }
            }
        }
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.workers == 0 {
            return Err(Error::Parse("workers must be at least 1".into()));
        }
        if self.direct_cap > DIRECT_LIMIT.min(ARITY_MAX) || self.sd_cap >= ARITY_MAX {
            return Err(Error::Budget(format!(
                "caps {} / {} exceed the supported arity",
                self.direct_cap, self.sd_cap
            )));
        }
        Ok(())
    }

    pub fn budget(&self) -> Result<EnumerationBudget> {
        EnumerationBudget::new(self.direct_cap, self.sd_cap)
    }
}

fn parse_workers(v: &str) -> Result<usize> {
    match v.trim().parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(Error::Parse(format!("invalid worker count {v:?}"))),
    }
}
