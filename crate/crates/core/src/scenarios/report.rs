use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub const REPORT_VERSION: u32 = 1;

/// Where a check's expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// A literal stated in the source mathematics, pinned by hand.
    Paper,
    /// Computed by an independent oracle or by hand derivation.
    Derived,
    /// Immediate from a definition.
    Trivial,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub label: String,
    pub expected: String,
    pub actual: String,
    pub provenance: Provenance,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorKind {
    /// A verdict came back `Unknown` where the scenario needs a decision.
    InternalUnknownVerdict,
    Algebra,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioError {
    pub kind: ErrorKind,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub name: String,
    pub status: Status,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<ScenarioError>,
}

impl ScenarioReport {
    pub fn failing_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub version: u32,
    pub seed: u64,
    pub corpus_size: usize,
    pub scenarios: Vec<ScenarioReport>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.scenarios.iter().all(|s| s.status == Status::Pass)
    }

    /// 0 when everything passes, 3 if any scenario hit an undecided
    /// verdict, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        let unknown = self.scenarios.iter().any(|s| {
            matches!(
                &s.error,
                Some(ScenarioError {
                    kind: ErrorKind::InternalUnknownVerdict,
                    ..
                })
            )
        });
        if unknown {
            3
        } else if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Report> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.scenarios {
            let status = match s.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Error => "ERROR",
            };
            let passed = s.checks.iter().filter(|c| c.pass).count();
            let _ = writeln!(out, "{status} {} ({passed}/{} checks)", s.name, s.checks.len());
            for c in &s.checks {
                let mark = if c.pass { "ok  " } else { "FAIL" };
                let _ = writeln!(out, "  {mark} {}", c.label);
                if !c.pass {
                    let _ = writeln!(out, "       expected: {}", c.expected);
                    let _ = writeln!(out, "       actual:   {}", c.actual);
                }
            }
            if let Some(e) = &s.error {
                let _ = writeln!(out, "  error: {}", e.message);
            }
        }
        let passed = self
            .scenarios
            .iter()
            .filter(|s| s.status == Status::Pass)
            .count();
        let _ = writeln!(
            out,
            "{passed}/{} scenarios passed (seed {}, corpus size {})",
            self.scenarios.len(),
            self.seed,
            self.corpus_size
        );
        out
    }
}
