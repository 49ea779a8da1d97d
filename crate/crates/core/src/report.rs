//! Check results, statuses and deterministic report rendering.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::Error;

pub const ARTIFACT_VERSION: &str = concat!("godeaux-core ", env!("CARGO_PKG_VERSION"));

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Certified,
    PaperAsserted,
    InconclusiveBudget,
    Failed,
}

impl Status {
    /// 0 certified, 2 paper-asserted, 3 inconclusive, 4 failed.
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Certified => 0,
            Status::PaperAsserted => 2,
            Status::InconclusiveBudget => 3,
            Status::Failed => 4,
        }
    }

    pub fn worst(a: Status, b: Status) -> Status {
        a.max(b)
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Certified => "certified",
            Status::PaperAsserted => "paper-asserted",
            Status::InconclusiveBudget => "inconclusive-budget",
            Status::Failed => "failed",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub id: String,
    pub description: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub witness: Value,
}

impl Check {
    pub fn new(id: impl Into<String>, description: impl Into<String>, status: Status, witness: Value) -> Self {
        Check { id: id.into(), description: description.into(), status, note: None, witness }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    /// A boolean verdict with its witness; errors become failures, except an
    /// exhausted step budget which is inconclusive.
    pub fn from_outcome<T: Serialize>(
        id: impl Into<String>,
        description: impl Into<String>,
        outcome: crate::error::Result<(bool, T)>,
    ) -> Self {
        match outcome {
            Ok((ok, w)) => Check::new(
                id,
                description,
                if ok { Status::Certified } else { Status::Failed },
                serde_json::to_value(w).unwrap_or(Value::Null),
            ),
            Err(e @ Error::BudgetExceeded { .. }) => {
                Check::new(id, description, Status::InconclusiveBudget, Value::Null).with_note(e.to_string())
            }
            Err(e) => Check::new(id, description, Status::Failed, Value::Null).with_note(e.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub artifact_version: String,
    pub command: String,
    pub config: Value,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: impl Into<String>, config: Value) -> Self {
        Report { artifact_version: ARTIFACT_VERSION.into(), command: command.into(), config, checks: Vec::new() }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = Check>) {
        self.checks.extend(cs);
    }

    pub fn status(&self) -> Status {
        self.checks.iter().map(|c| c.status).fold(Status::Certified, Status::worst)
    }

    pub fn exit_code(&self) -> i32 {
        self.status().exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values serialize")
    }

    pub fn summary_markdown(&self) -> String {
        let mut out = format!("# {}\n\n| check | status | description |\n|---|---|---|\n", self.command);
        for c in &self.checks {
            out.push_str(&format!("| {} | {} | {} |\n", c.id, c.status, c.description.replace('|', "\\|")));
        }
        out.push_str(&format!("\noverall: {}\n", self.status()));
        out
    }
}

/// A markdown table with a header row.
pub fn markdown_table(header: &[String], rows: &[Vec<String>]) -> String {
    let mut out = format!("| {} |\n|{}\n", header.join(" | "), "---|".repeat(header.len()));
    for r in rows {
        out.push_str(&format!("| {} |\n", r.join(" | ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_the_worst_status() {
        let mut r = Report::new("t", Value::Null);
        assert_eq!(r.exit_code(), 0);
        r.push(Check::new("a", "", Status::PaperAsserted, Value::Null));
        assert_eq!(r.exit_code(), 2);
        r.push(Check::new("b", "", Status::Certified, Value::Null));
        assert_eq!(r.exit_code(), 2);
        r.push(Check::new("c", "", Status::Failed, Value::Null));
        assert_eq!(r.exit_code(), 4);
    }

    #[test]
    fn budget_errors_are_inconclusive() {
        let c = Check::from_outcome::<()>("x", "", Err(Error::BudgetExceeded { budget: 3 }));
        assert_eq!(c.status, Status::InconclusiveBudget);
        let c = Check::from_outcome("x", "", Ok((true, 5)));
        assert_eq!(c.status, Status::Certified);
        assert_eq!(serde_json::to_string(&Status::PaperAsserted).unwrap(), "\"paper-asserted\"");
    }

    #[test]
    fn markdown_is_stable() {
        let t = markdown_table(&["a".into(), "b".into()], &[vec!["1".into(), "2".into()]]);
        assert_eq!(t, "| a | b |\n|---|---|\n| 1 | 2 |\n");
    }
}
