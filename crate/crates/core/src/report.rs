//! Structured verification reports shared by every suite.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

/// Where an identity was certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    FreeRing,
    ModBorel,
    Matrix,
}

impl Level {
    pub fn as_str(&self) -> &'static str {
        match self {
            Level::FreeRing => "free_ring",
            Level::ModBorel => "mod_borel",
            Level::Matrix => "matrix",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

/// One named identity and its outcome. A failing check carries a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub level: Level,
    pub status: Status,
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>, level: Level) -> Self {
        Check {
            name: name.into(),
            level,
            status: Status::Pass,
            witness: None,
        }
    }

    pub fn fail(name: impl Into<String>, level: Level, witness: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            level,
            status: Status::Fail,
            witness: Some(witness.into()),
        }
    }

    pub fn skipped(name: impl Into<String>, level: Level, reason: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            level,
            status: Status::Skipped,
            witness: Some(reason.into()),
        }
    }

    /// Pass when `ok`, otherwise fail with the lazily built witness.
    pub fn expect(name: impl Into<String>, level: Level, ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Self::pass(name, level)
        } else {
            Self::fail(name, level, witness())
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub suite: String,
    pub params: BTreeMap<String, serde_json::Value>,
    pub checks: Vec<Check>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>) -> Self {
        VerificationReport {
            suite: suite.into(),
            params: BTreeMap::new(),
            checks: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn with_param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params.insert(
            key.to_string(),
            serde_json::to_value(value).expect("parameters serialize"),
        );
        self
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    /// Appends the checks of another report, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: VerificationReport) {
        for mut c in other.checks {
            if !prefix.is_empty() {
                c.name = format!("{prefix} {}", c.name);
            }
            self.checks.push(c);
        }
    }

    /// True when no check failed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Fixed-width table: status, level, name, then the witness if any.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite: {}", self.suite);
        for (k, v) in &self.params {
            let _ = writeln!(out, "param: {k} = {v}");
        }
        let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(4).max(4);
        let _ = writeln!(out, "{:<7} {:<9} {:<width$} witness", "status", "level", "name");
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{:<7} {:<9} {:<width$} {}",
                c.status.as_str(),
                c.level.as_str(),
                c.name,
                c.witness.as_deref().unwrap_or("-")
            );
        }
        let _ = writeln!(
            out,
            "summary: {} pass, {} fail, {} skipped",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skipped)
        );
        let _ = writeln!(out, "elapsed_ms: {}", self.elapsed_ms);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_is_valid_json() {
        let r = VerificationReport::new("empty");
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["checks"], serde_json::json!([]));
        assert!(r.passed());
    }

    #[test]
    fn failure_carries_witness() {
        let mut r = VerificationReport::new("x");
        r.push(Check::fail("bad", Level::Matrix, "[[1]]"));
        assert!(!r.passed());
        let v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["checks"][0]["witness"], "[[1]]");
        assert_eq!(v["checks"][0]["status"], "fail");
        assert_eq!(v["checks"][0]["level"], "matrix");
    }

    #[test]
    fn formats_agree() {
        let mut r = VerificationReport::new("x");
        r.push(Check::pass("alpha", Level::FreeRing));
        r.push(Check::fail("beta", Level::ModBorel, "w"));
        let text = r.to_text();
        for c in &r.checks {
            let line = text.lines().find(|l| l.contains(&c.name)).unwrap();
            assert!(line.starts_with(c.status.as_str()));
        }
    }
}
