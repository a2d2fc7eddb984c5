use serde::{Deserialize, Serialize};

/// Identifies the layout of [`Report`]; bumped on any incompatible change.
pub const SCHEMA: &str = "flopcalc.report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    /// A computation that makes no claim finished.
    Done,
    Pass,
    Inconclusive,
    Fail,
    UsageError,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Done | Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Inconclusive => 2,
            Outcome::UsageError => 64,
        }
    }
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Outcome::Done => "done",
            Outcome::Pass => "pass",
            Outcome::Inconclusive => "inconclusive",
            Outcome::Fail => "fail",
            Outcome::UsageError => "usage-error",
        };
        f.write_str(s)
    }
}

/// The JSON document written by `--json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub version: String,
    /// The arguments after the program name.
    pub command: Vec<String>,
    /// Inputs in canonical printed form.
    pub inputs: Vec<String>,
    pub oracle: String,
    pub outcome: Outcome,
    pub result: serde_json::Value,
    /// Map-rank facts and which oracle supplied them.
    pub provenance: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }
}
