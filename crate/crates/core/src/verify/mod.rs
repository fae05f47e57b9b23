//! Verification suites. Each suite runs a group of checks and reports one
//! pass/fail line per check.

mod suites;

use serde::{Deserialize, Serialize};

use crate::curves::{DEFAULT_SAMPLES, DEFAULT_TOL};
use crate::error::{param_error, Result};

pub use suites::{jackson_surface, max_parameter_gap, JACKSON_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Kneser,
    Maps,
    NeckLimit,
    Dichotomy,
    Jackson,
    Families,
    MoebiusInflections,
}

pub const SUITES: [Suite; 7] = [
    Suite::Kneser,
    Suite::Maps,
    Suite::NeckLimit,
    Suite::Dichotomy,
    Suite::Jackson,
    Suite::Families,
    Suite::MoebiusInflections,
];

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Kneser => "kneser",
            Suite::Maps => "maps",
            Suite::NeckLimit => "neck-limit",
            Suite::Dichotomy => "dichotomy",
            Suite::Jackson => "jackson",
            Suite::Families => "families",
            Suite::MoebiusInflections => "moebius-inflections",
        }
    }

    pub fn from_name(name: &str) -> Result<Suite> {
        SUITES
            .iter()
            .copied()
            .find(|s| s.name() == name)
            .ok_or_else(|| param_error(format!("unknown suite '{name}'")))
    }
}

impl std::fmt::Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// One assertion of a suite.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// Vertex or inflection count behind the check (summed over cases when
    /// the check aggregates several curves).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    pub detail: String,
}

impl Check {
    pub fn line(&self) -> String {
        format!("{} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    /// Check names paired with their counts, for resolution comparisons.
    pub fn counts(&self) -> Vec<(String, Option<usize>)> {
        self.checks.iter().map(|c| (c.name.clone(), c.count)).collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    /// Grid size of curvature profiles.
    pub samples: usize,
    /// Number of random cases for the property suites.
    pub cases: Option<usize>,
    pub seed: u64,
    /// Relative tolerance for `all_critical`.
    pub tol: f64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { samples: DEFAULT_SAMPLES, cases: None, seed: 0, tol: DEFAULT_TOL }
    }
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> SuiteReport {
    let checks = match suite {
        Suite::Kneser => suites::kneser(cfg),
        Suite::Maps => suites::maps(cfg),
        Suite::NeckLimit => suites::neck_limit(cfg),
        Suite::Dichotomy => suites::dichotomy(cfg),
        Suite::Jackson => suites::jackson(cfg),
        Suite::Families => suites::families(cfg),
        Suite::MoebiusInflections => suites::moebius_inflections(cfg),
    };
    SuiteReport { suite, checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in SUITES {
            assert_eq!(Suite::from_name(s.name()).unwrap(), s);
        }
        assert!(Suite::from_name("everything").is_err());
    }

    #[test]
    fn line_format() {
        let c = Check { name: "x".into(), passed: false, count: None, detail: "bad".into() };
        assert_eq!(c.line(), "FAIL x: bad");
    }
}
