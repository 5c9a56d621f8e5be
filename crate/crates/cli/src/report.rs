//! Check results and reports, with text and JSON renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
    pub anchor: String,
    pub millis: u64,
}

impl CheckResult {
    /// Passes iff the two renderings are identical.
    pub fn compare(name: impl Into<String>, expected: impl ToString, actual: impl ToString, anchor: &str) -> Self {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        CheckResult { name: name.into(), pass: expected == actual, expected, actual, anchor: anchor.to_string(), millis: 0 }
    }

    /// A failed check recording an engine error by name.
    pub fn error(name: impl Into<String>, expected: impl ToString, err: &dle_core::Error, anchor: &str) -> Self {
        CheckResult {
            name: name.into(),
            expected: expected.to_string(),
            actual: err.name().to_string(),
            pass: false,
            anchor: anchor.to_string(),
            millis: 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub parameters: BTreeMap<String, String>,
    pub engine_version: String,
    pub checks: Vec<CheckResult>,
    /// Symbolic derivation, one line per applied relation.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub derivation: Vec<String>,
}

impl Report {
    pub fn new(scenario: &str, parameters: BTreeMap<String, String>) -> Report {
        Report { scenario: scenario.to_string(), parameters, engine_version: ENGINE_VERSION.to_string(), checks: Vec::new(), derivation: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// The report with every timing set to zero.
    pub fn without_timings(&self) -> Report {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.millis = 0;
        }
        r
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let params: Vec<String> = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect();
        let _ = writeln!(out, "== {} ({}) [dle {}]", self.scenario, params.join(", "), self.engine_version);
        for c in &self.checks {
            let status = if c.pass { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{status} {}: expected {}, actual {} ({} ms; {})", c.name, c.expected, c.actual, c.millis, c.anchor);
        }
        for step in &self.derivation {
            let _ = writeln!(out, "  {step}");
        }
        let passed = self.checks.iter().filter(|c| c.pass).count();
        let _ = writeln!(out, "{passed}/{} checks passed", self.checks.len());
        out
    }
}

/// JSON for a list of reports: a single object for one report, an array
/// otherwise.
pub fn to_json(reports: &[Report]) -> String {
    let rendered = match reports {
        [one] => serde_json::to_string_pretty(one),
        many => serde_json::to_string_pretty(many),
    };
    rendered.expect("reports serialize")
}

/// Inverse of [`to_json`].
pub fn from_json(s: &str) -> serde_json::Result<Vec<Report>> {
    match serde_json::from_str::<Report>(s) {
        Ok(r) => Ok(vec![r]),
        Err(_) => serde_json::from_str(s),
    }
}
