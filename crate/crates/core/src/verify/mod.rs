//! The acceptance suite: every criterion as a list of numeric checks.

mod criteria;

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use criteria::CRITERIA;

/// Seed used when the caller supplies none.
pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Comparison {
    /// `|observed - expected| <= tolerance`
    Abs,
    /// `|observed / expected - 1| <= tolerance`
    Rel,
    /// `observed <= tolerance`; `expected` is the ideal value.
    AtMost,
    /// `lo <= observed <= hi`
    Interval { lo: f64, hi: f64 },
    /// `observed == expected`
    Exact,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: f64,
    pub observed: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub pass: bool,
}

impl Check {
    fn new(name: impl Into<String>, expected: f64, observed: f64, tolerance: f64, comparison: Comparison) -> Self {
        let pass = match comparison {
            Comparison::Abs => (observed - expected).abs() <= tolerance,
            Comparison::Rel => (observed / expected - 1.0).abs() <= tolerance,
            Comparison::AtMost => observed <= tolerance,
            Comparison::Interval { lo, hi } => lo <= observed && observed <= hi,
            Comparison::Exact => observed == expected,
        };
        Self { name: name.into(), expected, observed, tolerance, comparison, pass }
    }

    pub fn abs(name: impl Into<String>, expected: f64, observed: f64, tolerance: f64) -> Self {
        Self::new(name, expected, observed, tolerance, Comparison::Abs)
    }

    pub fn rel(name: impl Into<String>, expected: f64, observed: f64, tolerance: f64) -> Self {
        Self::new(name, expected, observed, tolerance, Comparison::Rel)
    }

    pub fn at_most(name: impl Into<String>, observed: f64, bound: f64) -> Self {
        Self::new(name, 0.0, observed, bound, Comparison::AtMost)
    }

    pub fn interval(name: impl Into<String>, expected: f64, observed: f64, lo: f64, hi: f64) -> Self {
        let tolerance = (expected - lo).max(hi - expected);
        Self::new(name, expected, observed, tolerance, Comparison::Interval { lo, hi })
    }

    pub fn exact(name: impl Into<String>, expected: f64, observed: f64) -> Self {
        Self::new(name, expected, observed, 0.0, Comparison::Exact)
    }

    pub fn flag(name: impl Into<String>, holds: bool) -> Self {
        let v = if holds { 1.0 } else { 0.0 };
        Self::exact(name, 1.0, v)
    }
}

/// Static description of one criterion.
#[derive(Debug, Clone, Copy)]
pub struct Criterion {
    pub id: &'static str,
    pub group: &'static str,
    pub title: &'static str,
    /// Extra checks that sit beside a criterion rather than in the list itself.
    pub supplementary: bool,
    run: fn(u64) -> Result<Vec<Check>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: String,
    pub group: String,
    pub title: String,
    pub supplementary: bool,
    pub pass: bool,
    pub checks: Vec<Check>,
    /// Set when the criterion aborted before producing all its checks.
    pub error: Option<String>,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub pass: bool,
    pub criteria: Vec<CriterionResult>,
}

impl Criterion {
    pub fn run(&self, seed: u64) -> CriterionResult {
        let start = Instant::now();
        let (checks, error) = match (self.run)(seed) {
            Ok(c) => (c, None),
            Err(e) => (Vec::new(), Some(e.to_string())),
        };
        let pass = error.is_none() && !checks.is_empty() && checks.iter().all(|c| c.pass);
        CriterionResult {
            id: self.id.into(),
            group: self.group.into(),
            title: self.title.into(),
            supplementary: self.supplementary,
            pass,
            checks,
            error,
            seconds: start.elapsed().as_secs_f64(),
        }
    }

    pub fn matches(&self, filter: &str) -> bool {
        self.id == filter || self.group == filter
    }
}

pub fn criterion(id: &str) -> Result<&'static Criterion> {
    CRITERIA
        .iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::Input(format!("unknown criterion {id}")))
}

/// Criteria selected by `only` (ids or group names); all of them when empty.
pub fn select(only: &[String]) -> Result<Vec<&'static Criterion>> {
    if let Some(bad) = only.iter().find(|f| !CRITERIA.iter().any(|c| c.matches(f))) {
        return Err(Error::Input(format!("no criterion or group named {bad:?}")));
    }
    Ok(CRITERIA
        .iter()
        .filter(|c| only.is_empty() || only.iter().any(|f| c.matches(f)))
        .collect())
}

/// Runs the selected criteria in order, calling `progress` after each.
pub fn run_suite(seed: u64, only: &[String], mut progress: impl FnMut(&CriterionResult)) -> Result<VerifyReport> {
    let mut criteria = Vec::new();
    for c in select(only)? {
        let r = c.run(seed);
        progress(&r);
        criteria.push(r);
    }
    let pass = criteria.iter().all(|c| c.pass);
    Ok(VerifyReport { seed, pass, criteria })
}
