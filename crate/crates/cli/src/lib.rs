//! Batch verification harness over the pconf-core checks.
//!
//! A [`SuiteConfig`] selects a suite and a (g, n) grid; [`run_suite`] runs the
//! checks in parallel and returns a [`SuiteReport`] whose JSON form depends
//! only on the config.

mod suites;
mod table;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use clap::ValueEnum;
use pconf_core::confcoh::RelationSign;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use table::rank_table;

pub const MAX_GENUS: usize = 5;
pub const MAX_POINTS: usize = 6;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("bad range {0:?}: expected `a..b` or a single integer")]
    BadRange(String),
    #[error("{what} range {range} is empty")]
    EmptyRange { what: &'static str, range: IntRange },
    #[error("{what} must be at least {min}, got range {range}")]
    BelowMinimum {
        what: &'static str,
        min: usize,
        range: IntRange,
    },
    #[error("{what} range {range} exceeds the cap {cap}; pass --unsafe-large to run it anyway")]
    OverCap {
        what: &'static str,
        cap: usize,
        range: IntRange,
    },
    #[error("sample count must be positive")]
    NoSamples,
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Core(#[from] pconf_core::Error),
}

/// Inclusive integer range written `a..b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub lo: usize,
    pub hi: usize,
}

impl IntRange {
    pub fn new(lo: usize, hi: usize) -> Self {
        IntRange { lo, hi }
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        self.lo..=self.hi
    }
}

impl FromStr for IntRange {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ConfigError::BadRange(s.to_string());
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        match s.split_once("..") {
            Some((a, b)) => {
                let b = b.strip_prefix('=').unwrap_or(b);
                Ok(IntRange::new(parse(a)?, parse(b)?))
            }
            None => {
                let v = parse(s)?;
                Ok(IntRange::new(v, v))
            }
        }
    }
}

impl fmt::Display for IntRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.lo, self.hi)
    }
}

impl Serialize for IntRange {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Cup,
    Crossing,
    Push,
    Sym,
    Isotropic,
    Johnson,
    Cover,
    All,
}

impl Suite {
    pub const CONCRETE: [Suite; 7] = [
        Suite::Cup,
        Suite::Crossing,
        Suite::Push,
        Suite::Sym,
        Suite::Isotropic,
        Suite::Johnson,
        Suite::Cover,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Cup => "cup",
            Suite::Crossing => "crossing",
            Suite::Push => "push",
            Suite::Sym => "sym",
            Suite::Isotropic => "isotropic",
            Suite::Johnson => "johnson",
            Suite::Cover => "cover",
            Suite::All => "all",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SignArg {
    #[default]
    Minus,
    Plus,
}

impl From<SignArg> for RelationSign {
    fn from(s: SignArg) -> Self {
        match s {
            SignArg::Minus => RelationSign::Minus,
            SignArg::Plus => RelationSign::Plus,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteConfig {
    pub suite: Suite,
    pub g_range: IntRange,
    pub n_range: IntRange,
    pub samples: usize,
    pub seed: u64,
    pub relation_sign: SignArg,
    pub format: Format,
    #[serde(skip)]
    pub unsafe_large: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            suite: Suite::All,
            g_range: IntRange::new(2, 3),
            n_range: IntRange::new(2, 3),
            samples: 200,
            seed: 1,
            relation_sign: SignArg::Minus,
            format: Format::Json,
            unsafe_large: false,
        }
    }
}

pub(crate) fn check_ranges(g: IntRange, n: IntRange, unsafe_large: bool) -> Result<(), ConfigError> {
    for (what, range, min, cap) in [("g", g, 2, MAX_GENUS), ("n", n, 1, MAX_POINTS)] {
        if range.lo > range.hi {
            return Err(ConfigError::EmptyRange { what, range });
        }
        if range.lo < min {
            return Err(ConfigError::BelowMinimum { what, min, range });
        }
        if range.hi > cap && !unsafe_large {
            return Err(ConfigError::OverCap { what, cap, range });
        }
    }
    Ok(())
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        check_ranges(self.g_range, self.n_range, self.unsafe_large)?;
        if self.samples == 0 {
            return Err(ConfigError::NoSamples);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub inputs: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.summary.pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        out.push_str(&format!(
            "suite {} g={} n={} samples={} seed={} sign={:?}\n",
            c.suite.name(),
            c.g_range,
            c.n_range,
            c.samples,
            c.seed,
            c.relation_sign
        ));
        for r in &self.checks {
            out.push_str(&format!(
                "[{}] {:<40} {:<24} expected {} / actual {}\n",
                if r.pass { "PASS" } else { "FAIL" },
                r.id,
                r.anchor,
                r.expected,
                r.actual
            ));
        }
        let s = &self.summary;
        out.push_str(&format!(
            "{}/{} checks passed, {} failed: {}\nwall time {:.2?}\n",
            s.passed,
            s.total,
            s.failed,
            if s.pass { "PASS" } else { "FAIL" },
            self.wall_time
        ));
        out
    }

    pub fn render(&self) -> String {
        match self.config.format {
            Format::Text => self.to_text(),
            Format::Json => self.to_json(),
        }
    }
}

/// Per-task seed, a function of the run seed and the task's coordinates only,
/// so results do not depend on scheduling.
pub fn task_seed(seed: u64, suite: Suite, g: usize, n: usize) -> u64 {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for word in [suite as u64, g as u64, n as u64] {
        h = splitmix(h ^ word);
    }
    h
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport, HarnessError> {
    cfg.validate()?;
    let start = Instant::now();
    let tasks = suites::plan(cfg);
    let nested: Vec<Vec<CheckRecord>> = tasks
        .par_iter()
        .map(|t| suites::run(t, cfg))
        .collect::<Result<_, _>>()?;
    let mut checks: Vec<CheckRecord> = nested.into_iter().flatten().collect();
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    let passed = checks.iter().filter(|c| c.pass).count();
    let summary = Summary {
        total: checks.len(),
        passed,
        failed: checks.len() - passed,
        pass: passed == checks.len(),
    };
    Ok(SuiteReport {
        config: cfg.clone(),
        checks,
        summary,
        wall_time: start.elapsed(),
    })
}
